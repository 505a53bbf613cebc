#include "arrcoh/core_math.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>
#include <utility>

namespace arrcoh {

namespace {

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) {
    return std::isdigit(c) != 0;
  });
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view num = text;
  std::string_view den;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    num = text.substr(0, slash);
    den = text.substr(slash + 1);
    if (!all_digits(den)) {
      throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
    }
  }
  std::string_view digits = num;
  if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) {
    digits.remove_prefix(1);
  }
  if (!all_digits(digits)) {
    throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
  }
  Integer p(std::string(num.front() == '+' ? num.substr(1) : num));
  Integer q = den.empty() ? Integer(1) : Integer(std::string(den));
  if (q == 0) {
    throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  }
  return Rational(p, q);
}

std::string to_string(const Rational& q) {
  std::string s = numerator(q).str();
  if (denominator(q) != 1) s += "/" + denominator(q).str();
  return s;
}

IntegerMatrix multiply(const IntegerMatrix& a, const IntegerMatrix& b) {
  if (a.cols() != b.rows()) {
    throw std::invalid_argument("matrix shapes do not compose");
  }
  IntegerMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Integer& aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        if (b(k, j) != 0) c(i, j) += aik * b(k, j);
      }
    }
  }
  return c;
}

RationalMatrix matrix_from_rows(const std::vector<RationalVector>& rows,
                                std::size_t cols) {
  RationalMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) {
      throw std::invalid_argument("row length does not match column count");
    }
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

AbelianGroup::AbelianGroup(std::size_t r, std::vector<Integer> t)
    : rank(r), torsion(std::move(t)) {
  for (std::size_t k = 0; k < torsion.size(); ++k) {
    if (torsion[k] < 2) {
      throw std::invalid_argument("torsion coefficients must be >= 2");
    }
    if (k > 0 && torsion[k] % torsion[k - 1] != 0) {
      throw std::invalid_argument("torsion coefficients must form a divisibility chain");
    }
  }
}

AbelianGroup AbelianGroup::free_plus_z2(std::size_t r, std::size_t twos) {
  return AbelianGroup(r, std::vector<Integer>(twos, Integer(2)));
}

std::string to_string(const AbelianGroup& g) {
  if (g.is_trivial()) return "0";
  std::vector<std::string> parts;
  if (g.rank == 1) parts.emplace_back("Z");
  if (g.rank > 1) parts.push_back("Z^" + std::to_string(g.rank));
  for (std::size_t k = 0; k < g.torsion.size();) {
    std::size_t run = k;
    while (run < g.torsion.size() && g.torsion[run] == g.torsion[k]) ++run;
    std::string cyclic = "Z/" + g.torsion[k].str();
    parts.push_back(run - k == 1 ? cyclic
                                 : "(" + cyclic + ")^" + std::to_string(run - k));
    k = run;
  }
  std::string out = parts.front();
  for (std::size_t k = 1; k < parts.size(); ++k) out += " + " + parts[k];
  return out;
}

std::vector<std::size_t> row_reduce(RationalMatrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t p = row;
    while (p < m.rows() && m(p, col) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != row) {
      for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(p, c), m(row, c));
    }
    const Rational inv = 1 / m(row, col);
    for (std::size_t c = col; c < m.cols(); ++c) m(row, c) *= inv;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || m(r, col) == 0) continue;
      const Rational f = m(r, col);
      for (std::size_t c = col; c < m.cols(); ++c) {
        if (m(row, c) != 0) m(r, c) -= f * m(row, c);
      }
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

std::size_t rank(const RationalMatrix& m) {
  RationalMatrix work = m;
  return row_reduce(work).size();
}

Rational dot(const RationalVector& a, const RationalVector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: length mismatch");
  Rational s = 0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

std::optional<AffineSubspace> solve_intersection(const RationalMatrix& rows,
                                                 const RationalVector& offsets) {
  if (offsets.size() != rows.rows()) {
    throw std::invalid_argument("solve_intersection: one offset per row required");
  }
  const std::size_t n = rows.cols();
  RationalMatrix aug(rows.rows(), n + 1);
  for (std::size_t r = 0; r < rows.rows(); ++r) {
    for (std::size_t c = 0; c < n; ++c) aug(r, c) = rows(r, c);
    aug(r, n) = offsets[r];
  }
  const auto pivots = row_reduce(aug);
  if (!pivots.empty() && pivots.back() == n) return std::nullopt;

  AffineSubspace s;
  s.base.assign(n, Rational(0));
  std::vector<bool> is_pivot(n, false);
  for (std::size_t r = 0; r < pivots.size(); ++r) {
    s.base[pivots[r]] = aug(r, n);
    is_pivot[pivots[r]] = true;
  }
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    RationalVector v(n, Rational(0));
    v[f] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -aug(r, f);
    s.directions.push_back(std::move(v));
  }
  return s;
}

namespace {

// Diagonalizes with unimodular row/column operations, always pivoting on
// the entry of least absolute value. Returns the nonzero diagonal.
std::vector<Integer> dense_diagonal(IntegerMatrix a) {
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();
  std::vector<Integer> diagonal;
  auto swap_rows = [&](std::size_t x, std::size_t y) {
    if (x == y) return;
    for (std::size_t c = 0; c < cols; ++c) std::swap(a(x, c), a(y, c));
  };
  auto swap_cols = [&](std::size_t x, std::size_t y) {
    if (x == y) return;
    for (std::size_t r = 0; r < rows; ++r) std::swap(a(r, x), a(r, y));
  };

  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    std::size_t pi = rows, pj = cols;
    for (std::size_t i = t; i < rows; ++i) {
      for (std::size_t j = t; j < cols; ++j) {
        if (a(i, j) != 0 && (pi == rows || abs(a(i, j)) < abs(a(pi, pj)))) {
          pi = i;
          pj = j;
        }
      }
    }
    if (pi == rows) break;
    swap_rows(t, pi);
    swap_cols(t, pj);

    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (a(i, t) == 0) continue;
        const Integer q = a(i, t) / a(t, t);
        for (std::size_t c = t; c < cols; ++c) {
          if (a(t, c) != 0) a(i, c) -= q * a(t, c);
        }
        if (a(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (a(t, j) == 0) continue;
        const Integer q = a(t, j) / a(t, t);
        for (std::size_t r = t; r < rows; ++r) {
          if (a(r, t) != 0) a(r, j) -= q * a(r, t);
        }
        if (a(t, j) != 0) clean = false;
      }
      if (clean) break;
      // A remainder smaller than the pivot survived; move it to (t, t).
      std::size_t best_i = t, best_j = t;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (a(i, t) != 0 && abs(a(i, t)) < abs(a(best_i, best_j))) {
          best_i = i;
          best_j = t;
        }
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (a(t, j) != 0 && abs(a(t, j)) < abs(a(best_i, best_j))) {
          best_i = t;
          best_j = j;
        }
      }
      swap_rows(t, best_i);
      swap_cols(t, best_j);
    }
    diagonal.push_back(abs(a(t, t)));
  }
  return diagonal;
}

// Turns a list of nonzero diagonal entries into invariant factors.
std::vector<Integer> to_invariant_factors(std::vector<Integer> d) {
  for (std::size_t i = 0; i < d.size(); ++i) {
    for (std::size_t j = i + 1; j < d.size(); ++j) {
      const Integer g = gcd(d[i], d[j]);
      const Integer l = d[i] / g * d[j];
      d[i] = g;
      d[j] = l;
    }
  }
  return d;
}

// Row-sparse working copy used to strip unit pivots before the dense pass.
// Twisted coboundary matrices are mostly +-1 entries, so most of the rank
// is peeled off here without fill-in on the full matrix.
struct SparseWork {
  std::vector<std::map<std::size_t, Integer>> rows;
  std::vector<std::set<std::size_t>> col_rows;

  explicit SparseWork(const IntegerMatrix& a)
      : rows(a.rows()), col_rows(a.cols()) {
    for (std::size_t r = 0; r < a.rows(); ++r) {
      for (std::size_t c = 0; c < a.cols(); ++c) {
        if (a(r, c) != 0) {
          rows[r].emplace(c, a(r, c));
          col_rows[c].insert(r);
        }
      }
    }
  }

  // Unit entry with the smallest Markowitz cost, if any.
  std::optional<std::pair<std::size_t, std::size_t>> find_unit() const {
    std::optional<std::pair<std::size_t, std::size_t>> best;
    std::size_t best_cost = 0;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      for (const auto& [c, v] : rows[r]) {
        if (v != 1 && v != -1) continue;
        const std::size_t cost = (rows[r].size() - 1) * (col_rows[c].size() - 1);
        if (!best || cost < best_cost) {
          best = {r, c};
          best_cost = cost;
          if (cost == 0) return best;
        }
      }
    }
    return best;
  }

  void eliminate(std::size_t pr, std::size_t pc) {
    const Integer p = rows[pr].at(pc);
    const std::vector<std::size_t> targets(col_rows[pc].begin(), col_rows[pc].end());
    for (std::size_t r : targets) {
      if (r == pr) continue;
      const Integer f = rows[r].at(pc) * p;  // p is its own inverse
      for (const auto& [c, v] : rows[pr]) {
        auto [it, inserted] = rows[r].try_emplace(c, 0);
        it->second -= f * v;
        if (it->second == 0) {
          rows[r].erase(it);
          col_rows[c].erase(r);
        } else if (inserted) {
          col_rows[c].insert(r);
        }
      }
    }
    for (const auto& [c, v] : rows[pr]) col_rows[c].erase(pr);
    rows[pr].clear();
  }
};

}  // namespace

std::vector<Integer> smith_normal_form(const IntegerMatrix& a) {
  SparseWork work(a);
  std::size_t units = 0;
  while (auto pivot = work.find_unit()) {
    work.eliminate(pivot->first, pivot->second);
    ++units;
  }

  std::vector<std::size_t> live_rows;
  std::vector<std::size_t> live_cols;
  for (std::size_t r = 0; r < work.rows.size(); ++r) {
    if (!work.rows[r].empty()) live_rows.push_back(r);
  }
  for (std::size_t c = 0; c < work.col_rows.size(); ++c) {
    if (!work.col_rows[c].empty()) live_cols.push_back(c);
  }
  IntegerMatrix rest(live_rows.size(), live_cols.size());
  for (std::size_t i = 0; i < live_rows.size(); ++i) {
    for (std::size_t j = 0; j < live_cols.size(); ++j) {
      const auto& row = work.rows[live_rows[i]];
      if (auto it = row.find(live_cols[j]); it != row.end()) rest(i, j) = it->second;
    }
  }

  std::vector<Integer> invariants(units, Integer(1));
  for (auto& d : to_invariant_factors(dense_diagonal(std::move(rest)))) {
    invariants.push_back(std::move(d));
  }
  return invariants;
}

AbelianGroup cohomology_of_pair(const IntegerMatrix& d_in, const IntegerMatrix& d_out) {
  if (d_in.rows() != d_out.cols()) {
    throw std::invalid_argument("cohomology_of_pair: middle dimensions differ");
  }
  if (!multiply(d_out, d_in).is_zero()) {
    throw std::domain_error("cohomology_of_pair: d_out * d_in != 0, not a complex");
  }
  const std::size_t middle = d_in.rows();
  const std::size_t out_rank = smith_normal_form(d_out).size();
  const auto in_invariants = smith_normal_form(d_in);

  std::vector<Integer> torsion;
  for (const auto& d : in_invariants) {
    if (d > 1) torsion.push_back(d);
  }
  const std::size_t kernel = middle - out_rank;
  return AbelianGroup(kernel - in_invariants.size(), std::move(torsion));
}

std::size_t rank_mod2(const IntegerMatrix& m) {
  std::vector<std::vector<std::uint8_t>> bits(m.rows(), std::vector<std::uint8_t>(m.cols()));
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      bits[r][c] = static_cast<std::uint8_t>(boost::multiprecision::bit_test(abs(m(r, c)), 0));
    }
  }
  std::size_t rank = 0;
  for (std::size_t c = 0; c < m.cols() && rank < m.rows(); ++c) {
    std::size_t p = rank;
    while (p < m.rows() && bits[p][c] == 0) ++p;
    if (p == m.rows()) continue;
    std::swap(bits[p], bits[rank]);
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r != rank && bits[r][c] != 0) {
        for (std::size_t k = c; k < m.cols(); ++k) bits[r][k] ^= bits[rank][k];
      }
    }
    ++rank;
  }
  return rank;
}

}  // namespace arrcoh
