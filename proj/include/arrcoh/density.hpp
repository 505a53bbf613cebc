#pragma once

// Dense edges of the projective closure and the CDO condition on sign
// local systems.

#include "arrcoh/arrangement.hpp"

#include <vector>

namespace arrcoh {

/// Rank-one Z-local system: one monodromy sign per hyperplane. The sign at
/// infinity is forced by the meridian relation and equals the product of
/// the others.
class SignLocalSystem {
 public:
  explicit SignLocalSystem(std::vector<int> signs);

  const std::vector<int>& signs() const { return signs_; }
  std::size_t size() const { return signs_.size(); }
  int t0() const { return t0_; }
  /// Sign of cone hyperplane `index` (0 is the hyperplane at infinity).
  int cone_sign(std::size_t index) const { return index == 0 ? t0_ : signs_.at(index - 1); }

  static SignLocalSystem trivial(std::size_t d) { return SignLocalSystem(std::vector<int>(d, 1)); }
  /// Bit k of `mask` set means t_{k+1} = -1.
  static SignLocalSystem from_mask(std::size_t d, unsigned long long mask);

 private:
  std::vector<int> signs_;
  int t0_ = 1;
};

/// Connected components of the linear matroid on `normals`, each sorted,
/// ordered by smallest element. Loops (zero vectors) are rejected.
std::vector<std::vector<std::size_t>> matroid_components(const std::vector<RationalVector>& normals);

bool is_irreducible(const std::vector<RationalVector>& normals);

struct DenseEdgeReport {
  Flat edge;  // flat of the cone; hyperplane indices use the cone numbering
  int t_value = 1;
  bool at_infinity = false;
};

/// Product of the cone signs over the hyperplanes through `edge`.
int edge_monodromy(const Flat& edge, const SignLocalSystem& ls);

/// Dense edges of the projective closure. With `only_at_infinity` the list
/// is restricted to edges inside the hyperplane at infinity. The t_value
/// fields are filled from `ls` when given, else left at +1.
std::vector<DenseEdgeReport> dense_edges(const Arrangement& arr, bool only_at_infinity,
                                         const SignLocalSystem* ls = nullptr);

inline std::vector<DenseEdgeReport> dense_edges_at_infinity(const Arrangement& arr) {
  return dense_edges(arr, true);
}

struct CdoVerdict {
  bool satisfied = false;
  std::vector<DenseEdgeReport> violations;  // dense edges at infinity with t_X = +1
  std::vector<DenseEdgeReport> edges;       // every dense edge at infinity
};

/// Throws ArrangementError if the sign count differs from the hyperplane count.
CdoVerdict cdo_check(const Arrangement& arr, const SignLocalSystem& ls);

}  // namespace arrcoh
