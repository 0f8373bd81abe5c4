#include <doctest.h>

#include <cmath>

#include "sperner/bounds.hpp"

using namespace sperner;

namespace {

Rational exact_of(BoundId id, int n, int k, const BoundOptions& opts = {}) {
  const BoundValue v = eval_bound(id, n, k, opts);
  REQUIRE(v.exact.has_value());
  return *v.exact;
}

// Smallest c with (c + m)^2 >= 2^{n+2} m, by counting up.
std::uint64_t comp_lower_by_search(int n, std::uint64_t m) {
  const std::uint64_t target = (std::uint64_t{1} << (n + 2)) * m;
  std::uint64_t c = 0;
  while ((c + m) * (c + m) < target) ++c;
  return c;
}

}  // namespace

TEST_SUITE("bounds") {
  TEST_CASE("tags round-trip") {
    for (BoundId id : kAllBounds) CHECK(parse_bound_id(to_string(id)) == id);
    CHECK(to_string(BoundId::PiUpper) == "PI_UPPER");
    CHECK_THROWS_AS(parse_bound_id("PI_SIDEWAYS"), Error);
  }

  TEST_CASE("least antichain width parameter") {
    CHECK(lstar(2) == 2);
    CHECK(lstar(3) == 3);
    CHECK(lstar(4) == 4);
    CHECK(lstar(6) == 4);
    CHECK(lstar(7) == 5);
    CHECK(lstar(10) == 5);
    CHECK(lstar(11) == 6);
    CHECK_THROWS_AS(lstar(1), Error);
  }

  TEST_CASE("product upper bound") {
    // (16/9)^3 * 1^1 * 2^2
    CHECK(exact_of(BoundId::PiUpper, 4, 3) == Rational(16384, 729));
    for (int n = 2; n <= 10; ++n) {
      CHECK(exact_of(BoundId::PiUpper, n, 2) == Rational(pow2(2 * n - 4)));
      CHECK(exact_of(BoundId::ProdPairUpper, n, 2) == Rational(pow2(2 * n - 4)));
    }
  }

  TEST_CASE("pair sum upper bound") {
    for (int n = 2; n <= 20; ++n) {
      const BigInt expect = pow2(n) - pow2(n / 2) - pow2((n + 1) / 2) + 2;
      CHECK(exact_of(BoundId::SumPairUpper, n, 2) == Rational(expect));
    }
    CHECK(exact_of(BoundId::SumPairUpper, 4, 2) == 10);
  }

  TEST_CASE("sum upper bound") {
    CHECK(exact_of(BoundId::SigmaUpper, 8, 2) == 226);
    const BoundValue v = eval_bound(BoundId::SigmaUpper, 4, 3);
    CHECK(v.applicable);
    CHECK(v.approx == doctest::Approx(20.0 - 8.0 * std::sqrt(2.0)).epsilon(1e-12));
    CHECK(v.approx < 9.0);
  }

  TEST_CASE("sum lower bounds") {
    BoundOptions theorem;
    theorem.sigma_theorem_form = true;
    CHECK(exact_of(BoundId::SigmaLower, 8, 2, theorem) == 210);
    const BoundValue lemma = eval_bound(BoundId::SigmaLower, 8, 2);
    CHECK(lemma.approx == doctest::Approx(258.0 - 1.5 * std::sqrt(512.0)).epsilon(1e-12));
    CHECK(exact_of(BoundId::SigmaLowerPow2, 4, 4) == 7);
  }

  TEST_CASE("antichain comparability closed form") {
    BoundOptions opts;
    opts.ell = 1;
    CHECK(exact_of(BoundId::AntichainComp, 4, 3, opts) == 10);
  }

  TEST_CASE("comparability lower bound") {
    CHECK(exact_of(BoundId::CompLower, 4, 4) == 12);
    for (int n = 0; n <= 12; ++n)
      for (std::uint64_t m = 1; m <= (std::uint64_t{1} << n); ++m)
        CHECK(comp_lower_ceil(n, BigInt(m)) == comp_lower_by_search(n, m));
  }

  TEST_CASE("constructive product lower bound") {
    CHECK(exact_of(BoundId::PiLowerConstructive, 8, 3) == Rational(pow2(24), 19683));
    CHECK(eval_bound(BoundId::PiLowerConstructive, 8, 3).applicable);
    CHECK_FALSE(eval_bound(BoundId::PiLowerConstructive, 6, 3).applicable);
  }

  TEST_CASE("disproved conjecture value") {
    CHECK(exact_of(BoundId::GerbnerConjUpper, 12, 3) == Rational(pow2(27)));
    CHECK(exact_of(BoundId::GerbnerConjUpper, 4, 2) == Rational(pow2(4)));
  }

  TEST_CASE("gap inequality in the pair-sum argument") {
    // Fails at n = 2, where 2^{5/2} - 4 < 2; the argument only needs it when
    // some m with 2 <= m <= 2^{n-2} exists, i.e. n >= 3.
    CHECK_FALSE(sum_pair_gap_inequality(2));
    for (int n = 3; n <= 20; ++n) {
      CHECK(sum_pair_gap_inequality(n));
      const long double lhs = std::pow(2.0L, (n + 3) / 2.0L) - 4;
      const long double rhs = std::pow(2.0L, n / 2) + std::pow(2.0L, (n + 1) / 2) - 2;
      CHECK(lhs >= rhs);
    }
  }

  TEST_CASE("asymptotic threshold") {
    for (int k = 2; k <= 6; ++k)
      for (int n = 1; n <= 60; ++n) {
        const long double e = std::exp(1.0L);
        const long double rhs = (e - std::pow(1.0L + 1.0L / (k - 1), k - 1)) / (e * k);
        const long double lhs = std::pow(2.0L, -(n / k));
        if (std::fabs(lhs - rhs) > 1e-12L) CHECK(asym_threshold_holds(n, k) == (lhs <= rhs));
      }
  }

  TEST_CASE("sum offset sits in the window around the real optimum") {
    for (int k = 2; k <= 10; ++k) {
      const long double p = std::pow(2.0L, k - 1);
      const long double astar = std::log2(static_cast<long double>(k)) + std::log2(p / (p - 1));
      for (int n = 0; n <= 30; ++n) {
        const int a = sum_offset(n, k);
        CHECK(((n - a) % 2 + 2) % 2 == 0);
        CHECK(a - astar > -1.0L);
        CHECK(a - astar <= 1.0L);
      }
    }
    CHECK(sum_offset(4, 3) == 2);
    CHECK(sum_offset(8, 2) == 2);
  }

  TEST_CASE("reports are consistent over a grid") {
    for (int n = 0; n <= 20; ++n)
      for (int k = 2; k <= 8; ++k) {
        const auto report = bounds_report(n, k);
        CHECK(report.entries.size() == kAllBounds.size());
        const auto issues = report.inconsistencies();
        INFO("n=" << n << " k=" << k << (issues.empty() ? "" : " " + issues.front()));
        CHECK(issues.empty());
      }
    const auto r = bounds_report(8, 2, 4);
    CHECK(r.variants.at("SIGMA_LOWER/theorem").exact == Rational(210));
    CHECK(r.entries.at(BoundId::CompLower).applicable);
    CHECK_FALSE(bounds_report(8, 2).entries.at(BoundId::CompLower).applicable);
  }

  TEST_CASE("out-of-range arguments are flagged, not thrown") {
    CHECK_FALSE(eval_bound(BoundId::PiUpper, 100, 3).applicable);
    CHECK_FALSE(eval_bound(BoundId::ProdPairUpper, 6, 3).applicable);
    CHECK_FALSE(eval_bound(BoundId::SigmaLowerPow2, 6, 3).applicable);
  }

  TEST_CASE("comparison") {
    BoundValue a, b;
    a.exact = Rational(1, 3);
    b.exact = Rational(1, 2);
    CHECK(compare(a, b) < 0);
    CHECK(compare(b, a) > 0);
    BoundValue c;
    c.approx = 0.5;
    CHECK(compare(b, c) == 0);
  }
}
