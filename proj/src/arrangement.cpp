#include "arrcoh/arrangement.hpp"

#include <algorithm>
#include <map>
#include <string>

namespace arrcoh {

bool Hyperplane::contains(const AffineSubspace& s) const {
  if (dot(normal, s.base) != offset) return false;
  return std::all_of(s.directions.begin(), s.directions.end(),
                     [&](const RationalVector& v) { return dot(normal, v) == 0; });
}

Arrangement::Arrangement(std::size_t dimension, std::vector<Hyperplane> hyperplanes)
    : dimension_(dimension), hyperplanes_(std::move(hyperplanes)) {
  for (std::size_t i = 0; i < hyperplanes_.size(); ++i) {
    const auto& h = hyperplanes_[i];
    if (h.normal.size() != dimension_) {
      throw ArrangementError("hyperplane " + std::to_string(i + 1) + ": normal has length " +
                             std::to_string(h.normal.size()) + ", expected " +
                             std::to_string(dimension_));
    }
    if (std::all_of(h.normal.begin(), h.normal.end(),
                    [](const Rational& q) { return q == 0; })) {
      throw ArrangementError("hyperplane " + std::to_string(i + 1) + ": zero normal vector");
    }
  }
  for (std::size_t i = 0; i < hyperplanes_.size(); ++i) {
    for (std::size_t j = i + 1; j < hyperplanes_.size(); ++j) {
      RationalMatrix pair(2, dimension_ + 1);
      for (std::size_t c = 0; c < dimension_; ++c) {
        pair(0, c) = hyperplanes_[i].normal[c];
        pair(1, c) = hyperplanes_[j].normal[c];
      }
      pair(0, dimension_) = hyperplanes_[i].offset;
      pair(1, dimension_) = hyperplanes_[j].offset;
      if (arrcoh::rank(pair) == 1) {
        throw ArrangementError("hyperplanes " + std::to_string(i + 1) + " and " +
                               std::to_string(j + 1) + " coincide");
      }
    }
  }
}

bool Arrangement::is_central() const {
  return std::all_of(hyperplanes_.begin(), hyperplanes_.end(),
                     [](const Hyperplane& h) { return h.offset == 0; });
}

std::size_t Arrangement::rank() const {
  std::vector<RationalVector> normals;
  for (const auto& h : hyperplanes_) normals.push_back(h.normal);
  return arrcoh::rank(matrix_from_rows(normals, dimension_));
}

namespace {

std::optional<AffineSubspace> intersect(const Arrangement& arr,
                                        const std::vector<std::size_t>& indices) {
  std::vector<RationalVector> rows;
  RationalVector offsets;
  for (std::size_t i : indices) {
    rows.push_back(arr[i].normal);
    offsets.push_back(arr[i].offset);
  }
  return solve_intersection(matrix_from_rows(rows, arr.dimension()), offsets);
}

}  // namespace

std::vector<std::size_t> closure(const Arrangement& arr, const AffineSubspace& s) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    if (arr[i].contains(s)) out.push_back(i);
  }
  return out;
}

IntersectionPoset::IntersectionPoset(const Arrangement& arr) : arr_(arr) {
  const std::size_t n = arr.dimension();
  std::map<std::vector<std::size_t>, Flat> found;
  {
    Flat ambient;
    ambient.subspace = *intersect(arr, {});
    found.emplace(std::vector<std::size_t>{}, std::move(ambient));
  }
  // Refine: intersect every known flat with every hyperplane not on it.
  std::vector<std::vector<std::size_t>> queue{{}};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const auto base = queue[head];
    for (std::size_t h = 0; h < arr.size(); ++h) {
      if (std::binary_search(base.begin(), base.end(), h)) continue;
      auto indices = base;
      indices.insert(std::upper_bound(indices.begin(), indices.end(), h), h);
      auto sub = intersect(arr, indices);
      if (!sub) continue;
      auto closed = closure(arr, *sub);
      if (found.contains(closed)) continue;
      Flat f;
      f.hyperplanes = closed;
      f.codim = n - sub->dimension();
      f.subspace = std::move(*sub);
      found.emplace(closed, std::move(f));
      queue.push_back(std::move(closed));
    }
  }

  for (auto& [key, flat] : found) flats_.push_back(std::move(flat));
  std::stable_sort(flats_.begin(), flats_.end(), [](const Flat& a, const Flat& b) {
    return a.codim < b.codim;
  });

  mobius_.assign(flats_.size(), Integer(0));
  covers_.assign(flats_.size(), {});
  for (std::size_t x = 0; x < flats_.size(); ++x) {
    if (x == 0) {
      mobius_[x] = 1;
      continue;
    }
    Integer sum = 0;
    for (std::size_t y = 0; y < x; ++y) {
      if (flats_[y].codim < flats_[x].codim && less_equal(y, x)) {
        sum += mobius_[y];
        if (flats_[y].codim + 1 == flats_[x].codim) covers_[x].push_back(y);
      }
    }
    mobius_[x] = -sum;
  }
}

bool IntersectionPoset::less_equal(std::size_t y, std::size_t x) const {
  const auto& hy = flats_[y].hyperplanes;
  const auto& hx = flats_[x].hyperplanes;
  return std::includes(hx.begin(), hx.end(), hy.begin(), hy.end());
}

std::size_t IntersectionPoset::find(const std::vector<std::size_t>& hyperplanes) const {
  for (std::size_t k = 0; k < flats_.size(); ++k) {
    if (flats_[k].hyperplanes == hyperplanes) return k;
  }
  return npos;
}

std::vector<Integer> betti_numbers(const IntersectionPoset& poset) {
  std::vector<Integer> b(poset.arrangement().dimension() + 1, Integer(0));
  for (std::size_t k = 0; k < poset.flats().size(); ++k) {
    b[poset.flats()[k].codim] += abs(poset.mobius()[k]);
  }
  return b;
}

Cone cone(const Arrangement& arr) {
  const std::size_t n = arr.dimension();
  std::vector<Hyperplane> hs;
  Hyperplane infinity;
  infinity.normal.assign(n + 1, Rational(0));
  infinity.normal[n] = 1;
  infinity.offset = 0;
  hs.push_back(std::move(infinity));
  for (const auto& h : arr.hyperplanes()) {
    Hyperplane lifted;
    lifted.normal = h.normal;
    lifted.normal.push_back(-h.offset);
    lifted.offset = 0;
    hs.push_back(std::move(lifted));
  }
  return Cone{Arrangement(n + 1, std::move(hs)), 0};
}

std::vector<RationalVector> localization(const IntersectionPoset& poset, const Flat& flat) {
  std::vector<RationalVector> normals;
  for (std::size_t i : flat.hyperplanes) normals.push_back(poset.arrangement()[i].normal);
  return normals;
}

std::vector<Integer> projective_betti(const Arrangement& central) {
  if (!central.is_central()) {
    throw ArrangementError("projective_betti: arrangement is not central");
  }
  if (central.size() == 0) {
    throw ArrangementError("projective_betti: the empty arrangement has no projectivization");
  }
  const auto b = betti_numbers(IntersectionPoset(central));
  const std::size_t n = central.dimension();
  std::vector<Integer> q(n, Integer(0));
  q[0] = b[0];
  for (std::size_t k = 1; k < n; ++k) q[k] = b[k] - q[k - 1];
  if (b[n] != q[n - 1]) {
    throw std::logic_error("Poincare polynomial of a central arrangement is not divisible by 1+t");
  }
  return q;
}

}  // namespace arrcoh
