#pragma once

#include "arrcoh/cli.hpp"

#include <algorithm>
#include <numeric>
#include <filesystem>
#include <initializer_list>
#include <string>
#include <vector>

namespace arrcoh::testing {

inline Hyperplane hyperplane(std::initializer_list<long long> normal, long long offset = 0) {
  Hyperplane h;
  for (long long a : normal) h.normal.emplace_back(a);
  h.offset = offset;
  return h;
}

inline RationalVector vec(std::initializer_list<long long> xs) {
  RationalVector v;
  for (long long x : xs) v.emplace_back(x);
  return v;
}

inline std::vector<Integer> ints(std::initializer_list<long long> xs) {
  std::vector<Integer> v;
  for (long long x : xs) v.emplace_back(x);
  return v;
}

inline Arrangement concurrent_lines(std::size_t d) {
  static const long long pencil[][2] = {{1, 0}, {0, 1}, {1, 1}, {1, -1}, {1, 2}, {2, 1}, {2, 3}};
  std::vector<Hyperplane> hs;
  for (std::size_t k = 0; k < d; ++k) hs.push_back(hyperplane({pencil[k][0], pencil[k][1]}));
  return Arrangement(2, hs);
}

inline Arrangement triangle() {
  return Arrangement(2, {hyperplane({1, 0}), hyperplane({0, 1}), hyperplane({1, 1}, 1)});
}

inline Arrangement parallel_pair() {
  return Arrangement(2, {hyperplane({1, 0}), hyperplane({1, 0}, 1)});
}

inline Arrangement braid_r3() {
  return Arrangement(3, {hyperplane({1, -1, 0}), hyperplane({1, 0, -1}), hyperplane({0, 1, -1})});
}

inline std::string corpus_dir() { return ARRCOH_CORPUS_DIR; }

struct CorpusEntry {
  std::string name;
  Arrangement arrangement;
};

inline std::vector<CorpusEntry> corpus() {
  std::vector<std::filesystem::path> paths;
  for (const auto& e : std::filesystem::directory_iterator(corpus_dir())) {
    if (e.path().extension() == ".json") paths.push_back(e.path());
  }
  std::sort(paths.begin(), paths.end());
  std::vector<CorpusEntry> out;
  for (const auto& p : paths) {
    out.push_back({p.stem().string(), load_document(p.string()).arrangement});
  }
  return out;
}

}  // namespace arrcoh::testing
