#pragma once

// Command-line front end. `run_cli` is the whole program minus process
// plumbing so that it can be driven in-process by tests.

#include "arrcoh/density.hpp"

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace arrcoh {

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int invalid_input = 1;
inline constexpr int cdo_failure = 2;
inline constexpr int mismatch = 3;
inline constexpr int oracle_unsupported = 4;
}  // namespace exit_code

class DocumentError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parsed input file:
///   {"dimension": n,
///    "hyperplanes": [{"normal": ["1", "-1/2"], "offset": "0"}, ...],
///    "local_system": [1, -1, ...]}          // optional
/// Rationals are strings "p/q" or "p"; integers are also accepted.
struct ArrangementDocument {
  Arrangement arrangement;
  std::optional<std::vector<int>> local_system;
};

/// Throws DocumentError with a "<source>:<line>:<column>: ..." message on
/// malformed JSON, or "<source>: <json path>: ..." on schema violations.
ArrangementDocument parse_document(const std::string& text, const std::string& source = "<input>");
ArrangementDocument load_document(const std::string& path);

/// args excludes the program name, e.g. {"betti", "corpus/triangle.json"}.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace arrcoh
