#pragma once

#include "arrcoh/core_math.hpp"

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace arrcoh {

class ArrangementError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The affine hyperplane normal . x = offset.
struct Hyperplane {
  RationalVector normal;
  Rational offset;

  bool contains(const AffineSubspace& s) const;
};

/// An ordered list of distinct affine hyperplanes in C^n with rational
/// coefficients. Construction validates: every normal has length n and is
/// nonzero, and no two hyperplanes define the same set.
class Arrangement {
 public:
  Arrangement(std::size_t dimension, std::vector<Hyperplane> hyperplanes);

  std::size_t dimension() const { return dimension_; }
  std::size_t size() const { return hyperplanes_.size(); }
  const std::vector<Hyperplane>& hyperplanes() const { return hyperplanes_; }
  const Hyperplane& operator[](std::size_t i) const { return hyperplanes_[i]; }

  bool is_central() const;
  /// Rank of the normal vectors.
  std::size_t rank() const;

 private:
  std::size_t dimension_;
  std::vector<Hyperplane> hyperplanes_;
};

/// A nonempty intersection of hyperplanes. `hyperplanes` is closed: it
/// lists every hyperplane containing `subspace`, in increasing order.
struct Flat {
  std::vector<std::size_t> hyperplanes;
  AffineSubspace subspace;
  std::size_t codim = 0;

  bool is_ambient() const { return hyperplanes.empty(); }
};

/// Indices of all hyperplanes of `arr` containing `s`.
std::vector<std::size_t> closure(const Arrangement& arr, const AffineSubspace& s);

/// Intersection lattice (a meet-semilattice for affine arrangements)
/// ordered by reverse inclusion, with its Möbius function.
class IntersectionPoset {
 public:
  explicit IntersectionPoset(const Arrangement& arr);

  const Arrangement& arrangement() const { return arr_; }
  /// Flats sorted by codimension, then by hyperplane set. flats()[0] is
  /// the ambient space.
  const std::vector<Flat>& flats() const { return flats_; }
  const std::vector<Integer>& mobius() const { return mobius_; }
  /// covers()[x] lists the flats y with y < x and codim y = codim x - 1.
  const std::vector<std::vector<std::size_t>>& covers() const { return covers_; }

  /// y <= x in the poset, i.e. subspace(x) is contained in subspace(y).
  bool less_equal(std::size_t y, std::size_t x) const;
  /// Index of the flat with this closed hyperplane set, or npos.
  std::size_t find(const std::vector<std::size_t>& hyperplanes) const;

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

 private:
  Arrangement arr_;
  std::vector<Flat> flats_;
  std::vector<Integer> mobius_;
  std::vector<std::vector<std::size_t>> covers_;
};

inline IntersectionPoset intersection_poset(const Arrangement& arr) {
  return IntersectionPoset(arr);
}

/// b_i(M) = sum of |mu(X)| over flats of codimension i, for i = 0..n.
std::vector<Integer> betti_numbers(const IntersectionPoset& poset);

struct Cone {
  Arrangement arrangement;  // central, in dimension n + 1
  std::size_t infinity_index;
};

/// Projective closure as a central arrangement in C^{n+1}: index 0 is the
/// hyperplane at infinity z = 0, and index i >= 1 is a_i . x - c_i z = 0
/// for the i-th input hyperplane (1-based).
Cone cone(const Arrangement& arr);

/// Normals of the hyperplanes through `flat`, in index order.
std::vector<RationalVector> localization(const IntersectionPoset& poset, const Flat& flat);

/// Coefficients of P_M(t) / (1 + t) for a central arrangement, indexed
/// 0 .. n-1. Throws ArrangementError for non-central input and
/// std::logic_error if the division leaves a remainder.
std::vector<Integer> projective_betti(const Arrangement& central);

}  // namespace arrcoh
