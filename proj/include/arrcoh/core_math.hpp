#pragma once

// Exact rational linear algebra and integer normal forms.
//
// Everything here is a pure function of its inputs. Integers are
// arbitrary precision (GMP through Boost.Multiprecision); there is no
// floating point anywhere in the library.

#include <boost/multiprecision/gmp.hpp>

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace arrcoh {

using Integer = boost::multiprecision::mpz_int;
/// Always stored reduced with a positive denominator.
using Rational = boost::multiprecision::mpq_rational;

using RationalVector = std::vector<Rational>;

/// Parses "p/q" or "p" (optional sign, decimal digits). Throws
/// std::invalid_argument on malformed text or a zero denominator.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);

template <typename T>
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), entries_(rows * cols) {}
  DenseMatrix(std::size_t rows, std::size_t cols, std::vector<T> entries)
      : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (entries_.size() != rows_ * cols_) {
      throw std::invalid_argument("matrix entry count does not match shape");
    }
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const {
    return entries_[r * cols_ + c];
  }

  const std::vector<T>& entries() const { return entries_; }

  DenseMatrix transpose() const {
    DenseMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  bool is_zero() const {
    for (const auto& e : entries_)
      if (e != 0) return false;
    return true;
  }

  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> entries_;
};

using RationalMatrix = DenseMatrix<Rational>;
using IntegerMatrix = DenseMatrix<Integer>;

IntegerMatrix multiply(const IntegerMatrix& a, const IntegerMatrix& b);

/// Builds a matrix whose rows are the given vectors (all of equal length
/// `cols`; `cols` is needed when the list is empty).
RationalMatrix matrix_from_rows(const std::vector<RationalVector>& rows,
                                std::size_t cols);

/// Finitely generated abelian group Z^rank + Z/torsion[0] + ...,
/// in invariant-factor form: every torsion entry is >= 2 and divides the
/// next one.
struct AbelianGroup {
  std::size_t rank = 0;
  std::vector<Integer> torsion;

  AbelianGroup() = default;
  AbelianGroup(std::size_t r, std::vector<Integer> t);

  static AbelianGroup free(std::size_t r) { return AbelianGroup(r, {}); }
  /// Z^r + (Z/2)^twos
  static AbelianGroup free_plus_z2(std::size_t r, std::size_t twos);

  bool is_trivial() const { return rank == 0 && torsion.empty(); }
  friend bool operator==(const AbelianGroup&, const AbelianGroup&) = default;
};

/// "0", "Z", "Z^2 + Z/2", "(Z/2)^3", "Z/2 + Z/4" ...
std::string to_string(const AbelianGroup& g);

std::size_t rank(const RationalMatrix& m);

/// Row-reduced echelon form; returns the pivot column of each nonzero row.
std::vector<std::size_t> row_reduce(RationalMatrix& m);

/// Affine subspace base + span(directions). The directions are linearly
/// independent.
struct AffineSubspace {
  RationalVector base;
  std::vector<RationalVector> directions;

  std::size_t dimension() const { return directions.size(); }
};

/// Solution set of rows * x = offsets, or nullopt if it is empty.
std::optional<AffineSubspace> solve_intersection(const RationalMatrix& rows,
                                                 const RationalVector& offsets);

Rational dot(const RationalVector& a, const RationalVector& b);

/// Nonzero invariant factors d1 | d2 | ... of a, all positive. Their
/// count is the rank of a.
std::vector<Integer> smith_normal_form(const IntegerMatrix& a);

/// H = ker(d_out) / im(d_in) for a cochain fragment
///   Z^p --d_in--> Z^q --d_out--> Z^r
/// where d_in is q x p and d_out is r x q. Throws std::domain_error when
/// d_out * d_in != 0.
AbelianGroup cohomology_of_pair(const IntegerMatrix& d_in,
                                const IntegerMatrix& d_out);

/// Rank over Z/2Z.
std::size_t rank_mod2(const IntegerMatrix& m);

}  // namespace arrcoh
