#pragma once

// Closed-form answers for H^*(M, L): the combinatorial formula valid under
// the CDO condition, and the Hopf-fibration identification for central
// arrangements with total monodromy -1.

#include "arrcoh/density.hpp"

#include <stdexcept>
#include <string_view>
#include <vector>

namespace arrcoh {

enum class Method { theorem, lemma, oracle };

std::string_view to_string(Method m);

struct CohomologyProfile {
  std::vector<AbelianGroup> groups;  // degrees 0 .. n
  Method method = Method::theorem;
  bool cdo_verdict = false;
};

/// Raised when the combinatorial formula is requested outside the CDO regime.
class CdoViolation : public std::runtime_error {
 public:
  explicit CdoViolation(std::vector<DenseEdgeReport> violations);
  const std::vector<DenseEdgeReport>& violations() const { return violations_; }

 private:
  std::vector<DenseEdgeReport> violations_;
};

/// beta_i = |b_0 - b_1 + ... + (-1)^i b_i|. Requires b[0] == 1.
std::vector<Integer> beta_sequence(const std::vector<Integer>& betti);

/// The formula's groups from the Betti numbers of M alone:
///   H^n = Z^{beta_n} + (Z/2)^{beta_{n-1}},
///   H^i = (Z/2)^{beta_{i-1}} for 1 <= i <= n-1,
///   H^0 = 0.
std::vector<AbelianGroup> formula_groups(const std::vector<Integer>& betti);

/// Throws CdoViolation unless `force` is set; with `force` the groups are
/// evaluated regardless and cdo_verdict records the real verdict.
CohomologyProfile theorem_cohomology(const Arrangement& arr, const SignLocalSystem& ls,
                                     bool force = false);

/// H^i = (Z/2)^{b_{i-1}(M*)}. Throws ArrangementError unless `central` is
/// central with sign product -1.
CohomologyProfile lemma_central_cohomology(const Arrangement& central,
                                           const SignLocalSystem& ls);

}  // namespace arrcoh
