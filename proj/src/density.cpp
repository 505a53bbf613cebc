#include "arrcoh/density.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <string>

namespace arrcoh {

SignLocalSystem::SignLocalSystem(std::vector<int> signs) : signs_(std::move(signs)) {
  for (std::size_t i = 0; i < signs_.size(); ++i) {
    if (signs_[i] != 1 && signs_[i] != -1) {
      throw ArrangementError("local system entry " + std::to_string(i + 1) +
                             " must be +1 or -1, got " + std::to_string(signs_[i]));
    }
    t0_ *= signs_[i];
  }
}

SignLocalSystem SignLocalSystem::from_mask(std::size_t d, unsigned long long mask) {
  std::vector<int> s(d, 1);
  for (std::size_t k = 0; k < d; ++k) {
    if ((mask >> k) & 1ULL) s[k] = -1;
  }
  return SignLocalSystem(std::move(s));
}

namespace {

struct DisjointSets {
  std::vector<std::size_t> parent;
  explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t root(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void join(std::size_t a, std::size_t b) { parent[root(a)] = root(b); }
};

}  // namespace

// Components of a linear matroid are the components of the graph linking
// each non-basis element to the basis elements of its fundamental circuit.
std::vector<std::vector<std::size_t>> matroid_components(
    const std::vector<RationalVector>& normals) {
  const std::size_t m = normals.size();
  if (m == 0) return {};
  const std::size_t n = normals.front().size();
  for (const auto& v : normals) {
    if (v.size() != n) throw std::invalid_argument("matroid_components: ragged vectors");
    if (std::all_of(v.begin(), v.end(), [](const Rational& q) { return q == 0; })) {
      throw std::invalid_argument("matroid_components: zero vector");
    }
  }

  std::vector<std::size_t> basis;
  std::vector<RationalVector> basis_vectors;
  std::vector<std::size_t> outside;
  for (std::size_t e = 0; e < m; ++e) {
    basis_vectors.push_back(normals[e]);
    if (rank(matrix_from_rows(basis_vectors, n)) == basis_vectors.size()) {
      basis.push_back(e);
    } else {
      basis_vectors.pop_back();
      outside.push_back(e);
    }
  }

  // Columns of `coords` are the basis vectors.
  RationalMatrix coords(n, basis.size());
  for (std::size_t b = 0; b < basis.size(); ++b)
    for (std::size_t c = 0; c < n; ++c) coords(c, b) = basis_vectors[b][c];

  DisjointSets sets(m);
  for (std::size_t e : outside) {
    const auto solution = solve_intersection(coords, normals[e]);
    // e lies in the span of the basis, so the system is consistent with a
    // unique solution.
    for (std::size_t b = 0; b < basis.size(); ++b) {
      if (solution->base[b] != 0) sets.join(e, basis[b]);
    }
  }

  std::map<std::size_t, std::vector<std::size_t>> by_root;
  for (std::size_t e = 0; e < m; ++e) by_root[sets.root(e)].push_back(e);
  std::vector<std::vector<std::size_t>> blocks;
  for (auto& [root, block] : by_root) blocks.push_back(std::move(block));
  std::sort(blocks.begin(), blocks.end());
  return blocks;
}

bool is_irreducible(const std::vector<RationalVector>& normals) {
  if (normals.empty()) throw std::invalid_argument("is_irreducible: empty list");
  return matroid_components(normals).size() == 1;
}

int edge_monodromy(const Flat& edge, const SignLocalSystem& ls) {
  int t = 1;
  for (std::size_t i : edge.hyperplanes) t *= ls.cone_sign(i);
  return t;
}

std::vector<DenseEdgeReport> dense_edges(const Arrangement& arr, bool only_at_infinity,
                                         const SignLocalSystem* ls) {
  const Cone c = cone(arr);
  const IntersectionPoset poset(c.arrangement);
  std::vector<DenseEdgeReport> out;
  for (const auto& flat : poset.flats()) {
    // The ambient space is not an edge; a 0-dimensional flat of the cone is
    // the origin, whose projectivization is empty.
    if (flat.is_ambient() || flat.subspace.dimension() == 0) continue;
    const bool at_inf = std::binary_search(flat.hyperplanes.begin(), flat.hyperplanes.end(),
                                           c.infinity_index);
    if (only_at_infinity && !at_inf) continue;
    if (!is_irreducible(localization(poset, flat))) continue;
    DenseEdgeReport r;
    r.edge = flat;
    r.at_infinity = at_inf;
    if (ls != nullptr) r.t_value = edge_monodromy(flat, *ls);
    out.push_back(std::move(r));
  }
  return out;
}

CdoVerdict cdo_check(const Arrangement& arr, const SignLocalSystem& ls) {
  if (ls.size() != arr.size()) {
    throw ArrangementError("local system has " + std::to_string(ls.size()) +
                           " signs but the arrangement has " + std::to_string(arr.size()) +
                           " hyperplanes");
  }
  CdoVerdict v;
  v.edges = dense_edges(arr, true, &ls);
  for (const auto& e : v.edges) {
    if (e.t_value == 1) v.violations.push_back(e);
  }
  v.satisfied = v.violations.empty();
  return v;
}

}  // namespace arrcoh
