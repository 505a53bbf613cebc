#pragma once

// Verification oracle: the Salvetti complex of a complexified real
// arrangement with boundary maps twisted by a sign local system, reduced
// to integral cohomology by Smith normal form.

#include "arrcoh/engine.hpp"

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace arrcoh {

class OracleUnsupported : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A face of the real stratification: the relatively open polyhedron of
/// points x with sign(a_i . x - c_i) = sign_vector[i] for every i.
struct Face {
  std::vector<std::int8_t> sign_vector;
  RationalVector witness;  // a point of the face
  std::size_t dim = 0;

  bool is_chamber() const;
  /// Codimension in R^n.
  std::size_t codim(std::size_t n) const { return n - dim; }
};

/// True if `lower` lies in the closure of `upper`.
bool face_le(const Face& lower, const Face& upper);

/// Point x with equalities rows * x = offsets and
/// sign(normal_k . x - offset_k) = sign_k for every strict constraint, or
/// nullopt. Decided exactly by Fourier-Motzkin elimination.
struct StrictConstraint {
  RationalVector normal;
  Rational offset;
  int sign = 1;  // +1 or -1
};
std::optional<RationalVector> feasible_point(const RationalMatrix& equality_rows,
                                             const RationalVector& equality_offsets,
                                             const std::vector<StrictConstraint>& strict);

/// Every realizable sign vector exactly once, in lexicographic order of
/// sign vectors, each with a witness point.
std::vector<Face> enumerate_faces(const Arrangement& arr);

/// Cell [chamber >= face]; its dimension is the codimension of the face.
struct SalvettiCell {
  std::size_t chamber;  // index into faces
  std::size_t face;     // index into faces
};

/// Facet of a cell with its untwisted orientation sign and the hyperplanes
/// whose monodromy enters the twisted coefficient.
struct Incidence {
  std::size_t facet;  // index among cells one dimension lower
  int orientation = 1;
  std::vector<std::size_t> twist;
};

struct SalvettiComplex {
  std::size_t ambient_dim = 0;
  std::size_t hyperplane_count = 0;
  std::vector<Face> faces;
  std::vector<std::vector<SalvettiCell>> cells;  // cells[k] are the k-cells
  /// boundary[k][j] lists the facets of cells[k][j]; boundary[0] is empty.
  std::vector<std::vector<std::vector<Incidence>>> boundary;

  std::size_t top_dimension() const { return cells.size() - 1; }
  std::size_t total_cells() const;
};

SalvettiComplex build_salvetti(const Arrangement& arr, std::vector<Face> faces);
inline SalvettiComplex build_salvetti(const Arrangement& arr) {
  return build_salvetti(arr, enumerate_faces(arr));
}

struct TwistedComplex {
  std::vector<std::size_t> cell_counts;
  /// coboundary[k] : C^k -> C^{k+1}, a (#cells_{k+1}) x (#cells_k) matrix.
  std::vector<IntegerMatrix> coboundary;
};

/// Throws std::invalid_argument if the sign count is wrong.
TwistedComplex twisted_coboundaries(const SalvettiComplex& complex, const SignLocalSystem& ls);

/// delta^{k+1} delta^k = 0 for all k.
bool is_cochain_complex(const TwistedComplex& tc);

/// Groups H^0 .. H^{ambient_dim}; degrees above the top cell dimension are 0.
std::vector<AbelianGroup> cochain_cohomology(const TwistedComplex& tc, std::size_t ambient_dim);

/// dim over Z/2 of the cohomology of the mod-2 reduction, degrees 0..ambient_dim.
std::vector<std::size_t> mod2_cohomology_dims(const TwistedComplex& tc, std::size_t ambient_dim);

/// Alternating sum of the ranks of the rational cohomology.
long long rational_euler_characteristic(const TwistedComplex& tc);

struct OracleOptions {
  std::size_t max_cells = 6000;
};

/// Throws OracleUnsupported if the complex exceeds `opts.max_cells`, and
/// std::logic_error if the twisted maps fail to compose to zero.
CohomologyProfile oracle_cohomology(const Arrangement& arr, const SignLocalSystem& ls,
                                    const OracleOptions& opts = {});
/// Same, reusing a prebuilt complex.
CohomologyProfile oracle_cohomology(const SalvettiComplex& complex, const Arrangement& arr,
                                    const SignLocalSystem& ls);

}  // namespace arrcoh
