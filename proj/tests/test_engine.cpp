#include "arrcoh/engine.hpp"

#include "test_support.hpp"

#include <doctest.h>

using namespace arrcoh;
using namespace arrcoh::testing;

namespace {

using Groups = std::vector<AbelianGroup>;

AbelianGroup z2(std::size_t k) { return AbelianGroup::free_plus_z2(0, k); }

}  // namespace

TEST_CASE("beta_sequence examples") {
  for (long long d = 2; d <= 6; ++d) CHECK(beta_sequence(ints({1, d, d - 1})) == ints({1, d - 1, 0}));
  CHECK(beta_sequence(ints({1, 3, 3})) == ints({1, 2, 1}));
  CHECK(beta_sequence(ints({1})) == ints({1}));
  CHECK_THROWS(beta_sequence(ints({2, 1})));
}

TEST_CASE("theorem_cohomology examples") {
  SUBCASE("four concurrent lines") {
    const auto p = theorem_cohomology(concurrent_lines(4), SignLocalSystem({-1, 1, 1, 1}));
    CHECK(p.method == Method::theorem);
    CHECK(p.cdo_verdict);
    CHECK(p.groups == Groups{AbelianGroup(), z2(1), z2(3)});
  }
  SUBCASE("triangle") {
    const auto p = theorem_cohomology(triangle(), SignLocalSystem({-1, 1, 1}));
    CHECK(p.groups == Groups{AbelianGroup(), z2(1), AbelianGroup::free_plus_z2(1, 2)});
  }
  SUBCASE("parallel pair plus transversal") {
    const Arrangement arr(2, {hyperplane({1, 0}), hyperplane({1, 0}, 1), hyperplane({0, 1})});
    const auto p = theorem_cohomology(arr, SignLocalSystem({1, 1, -1}));
    CHECK(p.groups == Groups{AbelianGroup(), z2(1), z2(2)});
    // CDO forces t3 = -1 and t1 t2 = +1
    for (unsigned mask = 0; mask < 8; ++mask) {
      const auto ls = SignLocalSystem::from_mask(3, mask);
      const bool expected = ls.signs()[2] == -1 && ls.signs()[0] * ls.signs()[1] == 1;
      CHECK(cdo_check(arr, ls).satisfied == expected);
    }
  }
  SUBCASE("one dimension: H^1 = Z^beta_1 + (Z/2)^beta_0") {
    const Arrangement points(1, {hyperplane({1}), hyperplane({1}, 1), hyperplane({1}, 2)});
    const auto p = theorem_cohomology(points, SignLocalSystem({-1, 1, 1}));
    CHECK(p.groups == Groups{AbelianGroup(), AbelianGroup::free_plus_z2(2, 1)});
  }
  SUBCASE("refuses outside the CDO regime") {
    CHECK_THROWS_AS(theorem_cohomology(triangle(), SignLocalSystem::trivial(3)), CdoViolation);
    try {
      theorem_cohomology(parallel_pair(), SignLocalSystem({-1, 1}));
      FAIL("expected CdoViolation");
    } catch (const CdoViolation& e) {
      REQUIRE_FALSE(e.violations().empty());
      CHECK(e.violations().back().edge.hyperplanes == std::vector<std::size_t>{0, 1, 2});
    }
    const auto forced = theorem_cohomology(parallel_pair(), SignLocalSystem({-1, 1}), true);
    CHECK_FALSE(forced.cdo_verdict);
  }
}

TEST_CASE("lemma_central_cohomology examples") {
  SUBCASE("a point in C^1") {
    const auto p = lemma_central_cohomology(Arrangement(1, {hyperplane({1})}), SignLocalSystem({-1}));
    CHECK(p.groups == Groups{AbelianGroup(), z2(1)});
  }
  SUBCASE("concurrent lines") {
    for (std::size_t d = 2; d <= 6; ++d) {
      std::vector<int> s(d, 1);
      s[d - 1] = -1;
      const auto p = lemma_central_cohomology(concurrent_lines(d), SignLocalSystem(s));
      CHECK(p.groups == Groups{AbelianGroup(), z2(1), z2(d - 1)});
    }
  }
  SUBCASE("braid arrangement") {
    const auto p = lemma_central_cohomology(braid_r3(), SignLocalSystem({-1, 1, 1}));
    CHECK(p.groups == Groups{AbelianGroup(), z2(1), z2(2), AbelianGroup()});
  }
  SUBCASE("preconditions") {
    CHECK_THROWS_AS(lemma_central_cohomology(triangle(), SignLocalSystem({-1, 1, 1})), ArrangementError);
    CHECK_THROWS_AS(lemma_central_cohomology(braid_r3(), SignLocalSystem({-1, -1, 1})), ArrangementError);
  }
}

TEST_CASE("formula invariants over the corpus and all sign systems") {
  for (const auto& entry : corpus()) {
    CAPTURE(entry.name);
    const auto& arr = entry.arrangement;
    const auto b = betti_numbers(IntersectionPoset(arr));
    const std::size_t n = arr.dimension();
    for (unsigned long long mask = 0; mask < (1ULL << arr.size()); ++mask) {
      const auto ls = SignLocalSystem::from_mask(arr.size(), mask);
      const bool cdo = cdo_check(arr, ls).satisfied;
      if (mask == 0) CHECK_FALSE(cdo);  // the trivial system never passes
      if (!cdo) continue;
      const auto p = theorem_cohomology(arr, ls);
      REQUIRE(p.groups.size() == n + 1);
      CHECK(p.groups[0].is_trivial());
      for (std::size_t i = 0; i < n; ++i) CHECK(p.groups[i].rank == 0);
      // mod-2 dimension count
      for (std::size_t i = 0; i <= n; ++i) {
        const std::size_t next = i < n ? p.groups[i + 1].torsion.size() : 0;
        CHECK(Integer(p.groups[i].rank + p.groups[i].torsion.size() + next) == b[i]);
      }
      // alternating sum of ranks
      Integer chi = 0;
      for (std::size_t i = 0; i <= n; ++i) chi += (i % 2 ? -1 : 1) * Integer(b[i]);
      const Integer top = (n % 2 ? -1 : 1) * Integer(p.groups[n].rank);
      CHECK(chi == top);
      // both closed forms apply to central arrangements
      if (arr.is_central() && ls.t0() == -1) {
        CHECK(lemma_central_cohomology(arr, ls).groups == p.groups);
      }
    }
  }
}
