#include "arrcoh/salvetti.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <string>

namespace arrcoh {

bool Face::is_chamber() const {
  return std::none_of(sign_vector.begin(), sign_vector.end(),
                      [](std::int8_t s) { return s == 0; });
}

bool face_le(const Face& lower, const Face& upper) {
  for (std::size_t i = 0; i < lower.sign_vector.size(); ++i) {
    if (lower.sign_vector[i] != 0 && lower.sign_vector[i] != upper.sign_vector[i]) return false;
  }
  return true;
}

namespace {

// g . y + h > 0
struct Strict {
  RationalVector g;
  Rational h;
  friend bool operator<(const Strict& a, const Strict& b) {
    return std::tie(a.g, a.h) < std::tie(b.g, b.h);
  }
  friend bool operator==(const Strict& a, const Strict& b) = default;
};

// Fourier-Motzkin on strict inequalities in `vars` unknowns. Witnesses are
// rebuilt on the way back up by picking a value strictly between the
// tightest lower and upper bounds.
std::optional<RationalVector> solve_strict(std::vector<Strict> cons, std::size_t vars) {
  std::vector<Strict> kept;
  for (auto& c : cons) {
    const bool constant = std::all_of(c.g.begin(), c.g.end(),
                                      [](const Rational& q) { return q == 0; });
    if (constant) {
      if (c.h <= 0) return std::nullopt;
      continue;
    }
    kept.push_back(std::move(c));
  }
  std::sort(kept.begin(), kept.end());
  kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
  if (vars == 0) return RationalVector{};

  const std::size_t last = vars - 1;
  std::vector<Strict> lower, upper, rest;  // normalized so |coefficient of last| = 1
  for (auto& c : kept) {
    const Rational lead = c.g[last];
    if (lead == 0) {
      c.g.pop_back();
      rest.push_back(std::move(c));
      continue;
    }
    const Rational scale = 1 / abs(lead);
    Strict s;
    s.g.assign(c.g.begin(), c.g.end() - 1);
    for (auto& q : s.g) q *= scale;
    s.h = c.h * scale;
    (lead > 0 ? lower : upper).push_back(std::move(s));
  }

  std::vector<Strict> reduced = rest;
  for (const auto& lo : lower) {
    for (const auto& up : upper) {
      Strict s;
      s.g.resize(last);
      for (std::size_t k = 0; k < last; ++k) s.g[k] = lo.g[k] + up.g[k];
      s.h = lo.h + up.h;
      reduced.push_back(std::move(s));
    }
  }
  auto prefix = solve_strict(std::move(reduced), last);
  if (!prefix) return std::nullopt;

  // lower: y_last > -(g.y' + h); upper: y_last < g.y' + h
  std::optional<Rational> lo_bound, up_bound;
  for (const auto& lo : lower) {
    Rational v = -(dot(lo.g, *prefix) + lo.h);
    if (!lo_bound || v > *lo_bound) lo_bound = v;
  }
  for (const auto& up : upper) {
    Rational v = dot(up.g, *prefix) + up.h;
    if (!up_bound || v < *up_bound) up_bound = v;
  }
  Rational y = 0;
  if (lo_bound && up_bound) {
    y = (*lo_bound + *up_bound) / 2;
  } else if (lo_bound) {
    y = *lo_bound + 1;
  } else if (up_bound) {
    y = *up_bound - 1;
  }
  prefix->push_back(y);
  return prefix;
}

int sign_of(const Rational& q) { return q > 0 ? 1 : (q < 0 ? -1 : 0); }

}  // namespace

std::optional<RationalVector> feasible_point(const RationalMatrix& equality_rows,
                                             const RationalVector& equality_offsets,
                                             const std::vector<StrictConstraint>& strict) {
  const auto sub = solve_intersection(equality_rows, equality_offsets);
  if (!sub) return std::nullopt;
  const std::size_t m = sub->dimension();

  // Substitute x = base + sum y_j dir_j.
  std::vector<Strict> cons;
  for (const auto& c : strict) {
    Strict s;
    s.g.resize(m);
    for (std::size_t j = 0; j < m; ++j) s.g[j] = c.sign * dot(c.normal, sub->directions[j]);
    s.h = c.sign * (dot(c.normal, sub->base) - c.offset);
    cons.push_back(std::move(s));
  }
  const auto y = solve_strict(std::move(cons), m);
  if (!y) return std::nullopt;
  RationalVector x = sub->base;
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t c = 0; c < x.size(); ++c) x[c] += (*y)[j] * sub->directions[j][c];
  }
  return x;
}

std::vector<Face> enumerate_faces(const Arrangement& arr) {
  const std::size_t n = arr.dimension();
  std::vector<Face> partial(1);
  partial[0].witness.assign(n, Rational(0));

  for (std::size_t k = 0; k < arr.size(); ++k) {
    const Hyperplane& hk = arr[k];
    std::vector<Face> next;
    for (const auto& f : partial) {
      const int here = sign_of(dot(hk.normal, f.witness) - hk.offset);
      for (int s : {-1, 0, 1}) {
        Face g;
        g.sign_vector = f.sign_vector;
        g.sign_vector.push_back(static_cast<std::int8_t>(s));
        if (s == here) {
          g.witness = f.witness;
          next.push_back(std::move(g));
          continue;
        }
        std::vector<RationalVector> eq_rows;
        RationalVector eq_offsets;
        std::vector<StrictConstraint> strict;
        for (std::size_t i = 0; i <= k; ++i) {
          if (g.sign_vector[i] == 0) {
            eq_rows.push_back(arr[i].normal);
            eq_offsets.push_back(arr[i].offset);
          } else {
            strict.push_back({arr[i].normal, arr[i].offset, g.sign_vector[i]});
          }
        }
        auto point = feasible_point(matrix_from_rows(eq_rows, n), eq_offsets, strict);
        if (!point) continue;
        g.witness = std::move(*point);
        next.push_back(std::move(g));
      }
    }
    partial = std::move(next);
  }

  for (auto& f : partial) {
    std::vector<RationalVector> zero_normals;
    for (std::size_t i = 0; i < arr.size(); ++i) {
      if (f.sign_vector[i] == 0) zero_normals.push_back(arr[i].normal);
    }
    f.dim = n - rank(matrix_from_rows(zero_normals, n));
  }
  std::sort(partial.begin(), partial.end(),
            [](const Face& a, const Face& b) { return a.sign_vector < b.sign_vector; });
  return partial;
}

std::size_t SalvettiComplex::total_cells() const {
  std::size_t total = 0;
  for (const auto& c : cells) total += c.size();
  return total;
}

namespace {

// Orientation signs [cell : facet] for a regular CW complex, chosen so that
// every diamond cell > facet > ridge contributes two cancelling terms.
void orient(SalvettiComplex& sc) {
  for (std::size_t k = 1; k < sc.cells.size(); ++k) {
    for (auto& facets : sc.boundary[k]) {
      // ridge -> (position among facets, [facet : ridge])
      std::map<std::size_t, std::vector<std::pair<std::size_t, int>>> ridges;
      constexpr std::size_t empty_cell = static_cast<std::size_t>(-1);
      for (std::size_t p = 0; p < facets.size(); ++p) {
        if (k == 1) {
          ridges[empty_cell].push_back({p, 1});
          continue;
        }
        for (const auto& inc : sc.boundary[k - 1][facets[p].facet]) {
          ridges[inc.facet].push_back({p, inc.orientation});
        }
      }
      std::vector<std::vector<std::pair<std::size_t, int>>> adj(facets.size());
      for (const auto& [ridge, uses] : ridges) {
        if (uses.size() != 2) {
          throw std::logic_error("Salvetti complex is not regular: ridge shared by " +
                                 std::to_string(uses.size()) + " facets");
        }
        const int rel = -uses[0].second * uses[1].second;
        adj[uses[0].first].push_back({uses[1].first, rel});
        adj[uses[1].first].push_back({uses[0].first, rel});
      }
      std::vector<int> o(facets.size(), 0);
      o[0] = 1;
      std::deque<std::size_t> queue{0};
      while (!queue.empty()) {
        const std::size_t a = queue.front();
        queue.pop_front();
        for (const auto& [b, rel] : adj[a]) {
          const int want = o[a] * rel;
          if (o[b] == 0) {
            o[b] = want;
            queue.push_back(b);
          } else if (o[b] != want) {
            throw std::logic_error("inconsistent cell orientation");
          }
        }
      }
      for (std::size_t p = 0; p < facets.size(); ++p) {
        if (o[p] == 0) throw std::logic_error("cell boundary is disconnected");
        facets[p].orientation = o[p];
      }
    }
  }
}

}  // namespace

SalvettiComplex build_salvetti(const Arrangement& arr, std::vector<Face> faces) {
  const std::size_t n = arr.dimension();
  SalvettiComplex sc;
  sc.ambient_dim = n;
  sc.hyperplane_count = arr.size();
  sc.faces = std::move(faces);
  const auto& fs = sc.faces;

  std::map<std::vector<std::int8_t>, std::size_t> chamber_of;
  std::vector<std::size_t> chambers;
  std::size_t top = 0;
  for (std::size_t f = 0; f < fs.size(); ++f) {
    if (fs[f].is_chamber()) {
      chamber_of.emplace(fs[f].sign_vector, f);
      chambers.push_back(f);
    }
    top = std::max(top, fs[f].codim(n));
  }

  sc.cells.assign(top + 1, {});
  sc.boundary.assign(top + 1, {});
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> cell_index;
  for (std::size_t f = 0; f < fs.size(); ++f) {
    const std::size_t k = fs[f].codim(n);
    for (std::size_t c : chambers) {
      if (!face_le(fs[f], fs[c])) continue;
      cell_index[{c, f}] = sc.cells[k].size();
      sc.cells[k].push_back({c, f});
    }
  }

  // covers[f]: faces g with f in the closure of g and codim g = codim f - 1
  std::vector<std::vector<std::size_t>> covers(fs.size());
  for (std::size_t f = 0; f < fs.size(); ++f) {
    for (std::size_t g = 0; g < fs.size(); ++g) {
      if (fs[g].codim(n) + 1 == fs[f].codim(n) && face_le(fs[f], fs[g])) covers[f].push_back(g);
    }
  }

  for (std::size_t k = 1; k <= top; ++k) {
    for (const auto& cell : sc.cells[k]) {
      const auto& c = fs[cell.chamber].sign_vector;
      std::vector<Incidence> facets;
      for (std::size_t g : covers[cell.face]) {
        const auto& gs = fs[g].sign_vector;
        std::vector<std::int8_t> target(c.size());
        Incidence inc;
        for (std::size_t i = 0; i < c.size(); ++i) {
          target[i] = gs[i] != 0 ? gs[i] : c[i];
          // Crossing H_i from its negative side picks up t_i.
          if (target[i] != c[i] && c[i] < 0) inc.twist.push_back(i);
        }
        inc.facet = cell_index.at({chamber_of.at(target), g});
        facets.push_back(std::move(inc));
      }
      sc.boundary[k].push_back(std::move(facets));
    }
  }
  orient(sc);
  return sc;
}

TwistedComplex twisted_coboundaries(const SalvettiComplex& sc, const SignLocalSystem& ls) {
  if (ls.size() != sc.hyperplane_count) {
    throw std::invalid_argument("twisted_coboundaries: expected " +
                                std::to_string(sc.hyperplane_count) + " signs, got " +
                                std::to_string(ls.size()));
  }
  TwistedComplex tc;
  for (const auto& c : sc.cells) tc.cell_counts.push_back(c.size());
  for (std::size_t k = 1; k < sc.cells.size(); ++k) {
    IntegerMatrix delta(sc.cells[k].size(), sc.cells[k - 1].size());
    for (std::size_t j = 0; j < sc.cells[k].size(); ++j) {
      for (const auto& inc : sc.boundary[k][j]) {
        int coef = inc.orientation;
        for (std::size_t i : inc.twist) coef *= ls.signs()[i];
        delta(j, inc.facet) += coef;
      }
    }
    tc.coboundary.push_back(std::move(delta));
  }
  return tc;
}

bool is_cochain_complex(const TwistedComplex& tc) {
  for (std::size_t k = 0; k + 1 < tc.coboundary.size(); ++k) {
    if (!multiply(tc.coboundary[k + 1], tc.coboundary[k]).is_zero()) return false;
  }
  return true;
}

namespace {

IntegerMatrix incoming(const TwistedComplex& tc, std::size_t k) {
  return k == 0 ? IntegerMatrix(tc.cell_counts[0], 0) : tc.coboundary[k - 1];
}

IntegerMatrix outgoing(const TwistedComplex& tc, std::size_t k) {
  return k + 1 == tc.cell_counts.size() ? IntegerMatrix(0, tc.cell_counts[k])
                                        : tc.coboundary[k];
}

}  // namespace

std::vector<AbelianGroup> cochain_cohomology(const TwistedComplex& tc, std::size_t ambient_dim) {
  std::vector<AbelianGroup> groups(ambient_dim + 1);
  for (std::size_t k = 0; k < tc.cell_counts.size() && k <= ambient_dim; ++k) {
    groups[k] = cohomology_of_pair(incoming(tc, k), outgoing(tc, k));
  }
  return groups;
}

std::vector<std::size_t> mod2_cohomology_dims(const TwistedComplex& tc, std::size_t ambient_dim) {
  std::vector<std::size_t> dims(ambient_dim + 1, 0);
  for (std::size_t k = 0; k < tc.cell_counts.size() && k <= ambient_dim; ++k) {
    dims[k] = tc.cell_counts[k] - rank_mod2(outgoing(tc, k)) - rank_mod2(incoming(tc, k));
  }
  return dims;
}

long long rational_euler_characteristic(const TwistedComplex& tc) {
  long long chi = 0;
  for (std::size_t k = 0; k < tc.cell_counts.size(); ++k) {
    const auto dim = static_cast<long long>(tc.cell_counts[k]) -
                     static_cast<long long>(smith_normal_form(outgoing(tc, k)).size()) -
                     static_cast<long long>(smith_normal_form(incoming(tc, k)).size());
    chi += (k % 2 == 0) ? dim : -dim;
  }
  return chi;
}

CohomologyProfile oracle_cohomology(const SalvettiComplex& sc, const Arrangement& arr,
                                    const SignLocalSystem& ls) {
  const auto tc = twisted_coboundaries(sc, ls);
  if (!is_cochain_complex(tc)) {
    throw std::logic_error("internal error: twisted Salvetti coboundaries do not square to zero");
  }
  CohomologyProfile p;
  p.method = Method::oracle;
  p.cdo_verdict = cdo_check(arr, ls).satisfied;
  p.groups = cochain_cohomology(tc, sc.ambient_dim);
  return p;
}

CohomologyProfile oracle_cohomology(const Arrangement& arr, const SignLocalSystem& ls,
                                    const OracleOptions& opts) {
  if (ls.size() != arr.size()) {
    throw ArrangementError("local system length does not match the hyperplane count");
  }
  auto faces = enumerate_faces(arr);
  std::size_t cells = 0;
  for (const auto& f : faces) {
    if (!f.is_chamber()) continue;
    for (const auto& g : faces) cells += face_le(g, f) ? 1 : 0;
  }
  if (cells > opts.max_cells) {
    throw OracleUnsupported("Salvetti complex would have " + std::to_string(cells) +
                            " cells, above the limit of " + std::to_string(opts.max_cells));
  }
  return oracle_cohomology(build_salvetti(arr, std::move(faces)), arr, ls);
}

}  // namespace arrcoh
