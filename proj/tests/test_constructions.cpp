#include <doctest.h>

#include "oracles.hpp"
#include "sperner/bounds.hpp"
#include "sperner/constructions.hpp"

using namespace sperner;

namespace {

std::vector<int> block_sizes(int n, int k) {
  std::vector<int> out;
  for (int i = 0; i < k; ++i) out.push_back(n / k + (i < n % k ? 1 : 0));
  return out;
}

std::vector<std::uint64_t> expansion(const std::vector<int>& sizes, const std::vector<std::uint64_t>& t) {
  std::vector<std::uint64_t> out;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    std::uint64_t v = t[i];
    for (std::size_t j = 0; j < sizes.size(); ++j)
      if (j != i) v *= (std::uint64_t{1} << sizes[j]) - t[j];
    out.push_back(v);
  }
  return out;
}

// Calls fn on every segment vector with 1 <= t_i < 2^{|A_i|}.
template <typename Fn>
void for_each_segments(const std::vector<int>& sizes, Fn&& fn) {
  std::vector<std::uint64_t> t(sizes.size(), 1);
  while (true) {
    fn(t);
    std::size_t i = 0;
    for (; i < t.size(); ++i) {
      if (t[i] + 1 < (std::uint64_t{1} << sizes[i])) {
        ++t[i];
        break;
      }
      t[i] = 1;
    }
    if (i == t.size()) return;
  }
}

FamilyTuple from_elements(int n, const std::vector<std::vector<std::vector<int>>>& fams) {
  FamilyTuple t{n, {}};
  for (const auto& fam : fams) {
    Family f(n);
    for (const auto& set : fam) f.insert(mask_from_elements(set));
    t.families.push_back(f);
  }
  return t;
}

BigInt antichain_comp_formula(int n, int k, int ell) {
  // k 2^l + 2^{n-l} - 2^{n-l-k+1} - (k-1)
  return BigInt(k) * pow2(ell) + pow2(n - ell) - pow2(n - ell - k + 1) - (k - 1);
}

}  // namespace

TEST_SUITE("constructions") {
  TEST_CASE("pair product") {
    for (int n = 2; n <= 12; ++n) {
      const auto t = build_pair_product(n);
      CHECK(t.families[0].size() == (std::size_t{1} << (n - 2)));
      CHECK(t.families[1].size() == (std::size_t{1} << (n - 2)));
      CHECK(measures(t).product == pow2(2 * n - 4));
      if (n <= 8) CHECK(oracle::cross_sperner(t));
    }
    CHECK_THROWS_AS(build_pair_product(1), Error);
  }

  TEST_CASE("pair sum meets the pair sum bound") {
    for (int n = 2; n <= 14; ++n) {
      const auto t = build_pair_sum(n);
      CHECK(measures(t).sum == pow2(n) - pow2(n / 2) - pow2((n + 1) / 2) + 2);
      if (n <= 8) CHECK(oracle::cross_sperner(t));
    }
  }

  TEST_CASE("product construction reproduces the worked n=6, k=3 example") {
    const auto expect = from_elements(
        6, {{{4, 6}, {4, 5, 6}, {3, 4, 6}, {3, 4, 5, 6}, {1, 4, 6}, {1, 4, 5, 6}, {1, 3, 4, 6}, {1, 3, 4, 5, 6}},
            {{2, 6}, {2, 5, 6}, {2, 3, 6}, {2, 3, 5, 6}, {1, 2, 6}, {1, 2, 5, 6}, {1, 2, 3, 6}, {1, 2, 3, 5, 6}},
            {{2, 4}, {2, 4, 5}, {2, 3, 4}, {2, 3, 4, 5}, {1, 2, 4}, {1, 2, 4, 5}, {1, 2, 3, 4}, {1, 2, 3, 4, 5}}});
    const auto built = build_product_tuple(ProductParams{6, 3, {2, 2, 2}});
    const auto a = canonicalize(built), b = canonicalize(expect);
    REQUIRE(a.k() == 3);
    for (std::size_t i = 0; i < 3; ++i) CHECK(a.families[i] == b.families[i]);
    CHECK(built.families[0] == expect.families[0]);
    CHECK(measures(built).product == 512);
  }

  TEST_CASE("product sizes equal the expansion for every segment choice") {
    int built = 0;
    for (int n = 2; n <= 9; ++n)
      for (int k = 2; k <= std::min(n, 4); ++k) {
        const auto sizes = block_sizes(n, k);
        for_each_segments(sizes, [&](const std::vector<std::uint64_t>& t) {
          const ProductParams p{n, k, t};
          const auto tuple = build_product_tuple(p);
          const auto expect = expansion(sizes, t);
          CHECK(p.predicted_sizes() == expect);
          for (std::size_t i = 0; i < tuple.k(); ++i) CHECK(tuple.families[i].size() == expect[i]);
          if (n <= 6) CHECK(oracle::cross_sperner(tuple));
          ++built;
        });
      }
    CHECK(built > 1000);
  }

  TEST_CASE("product members split as colex segment and complement") {
    const ProductParams p{7, 3, {3, 1, 2}};
    const auto t = build_product_tuple(p);
    const auto blocks = p.blocks();
    std::vector<Family> x;
    for (std::size_t i = 0; i < blocks.size(); ++i) x.push_back(colex_initial_segment(7, blocks[i], p.segments[i]));
    for (std::size_t i = 0; i < t.k(); ++i)
      for (SetMask f : t.families[i].masks())
        for (std::size_t j = 0; j < blocks.size(); ++j) {
          const SetMask part = f & mask_from_elements(blocks[j]);
          CHECK(x[j].contains(part) == (i == j));
        }
  }

  TEST_CASE("product defaults") {
    const auto p = ProductParams::defaults(12, 3);
    CHECK(p.segments == std::vector<std::uint64_t>{5, 5, 5});
    CHECK(p.predicted_sizes() == std::vector<std::uint64_t>{605, 605, 605});
    const auto t = build_product_tuple(p);
    CHECK(measures(t).product == BigInt(605) * 605 * 605);
    CHECK(measures(t).product > pow2(27));
  }

  TEST_CASE("product construction rejects infeasible parameters") {
    CHECK_THROWS_AS(build_product_tuple(ProductParams::defaults(2, 3)), Error);
    CHECK_THROWS_AS(build_product_tuple(ProductParams{6, 3, {2, 2}}), Error);
    CHECK_THROWS_AS(build_product_tuple(ProductParams{6, 3, {0, 2, 2}}), Error);
    CHECK_THROWS_AS(build_product_tuple(ProductParams{6, 3, {5, 2, 2}}), Error);
    try {
      build_product_tuple(ProductParams{6, 3, {4, 2, 2}});
      FAIL("expected EmptyBlock");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::EmptyBlock);
    }
    CHECK_THROWS_AS(ProductParams::defaults(6, 1), Error);
  }

  TEST_CASE("sum construction") {
    const auto t = build_sum_tuple(SumParams::automatic(4, 3));
    CHECK(measures(t).sum == 8);
    CHECK(oracle::cross_sperner(t));
    CHECK(measures(build_sum_tuple(SumParams::automatic(8, 2))).sum == 226);
  }

  TEST_CASE("sum construction antichain matches the closed form") {
    for (int n = 1; n <= 12; ++n)
      for (int k = 2; k <= 6; ++k)
        for (int ell = 0; n - ell >= k - 1; ++ell) {
          const auto p = SumParams::with_offset(n, k, n - 2 * ell);
          CHECK(p.ell == ell);
          const auto chain = p.antichain();
          const BigInt formula = antichain_comp_formula(n, k, ell);
          const auto measured = comparability_number(Family::from_masks(n, chain)).count;
          CHECK(BigInt(measured) == formula);
          if (n <= 8) CHECK(measured == oracle::comparability(n, chain));
          BoundOptions opts;
          opts.ell = ell;
          CHECK(eval_bound(BoundId::AntichainComp, n, k, opts).exact == Rational(formula));
          if (formula < pow2(n)) {
            const auto t = build_sum_tuple(p);
            CHECK(BigInt(t.families.back().size()) == pow2(n) - formula);
            CHECK(measures(t).sum == pow2(n) - formula + (k - 1));
          }
        }
  }

  TEST_CASE("sum parameters") {
    CHECK_THROWS_AS(SumParams::with_offset(6, 2, 1), Error);  // parity
    CHECK_THROWS_AS(SumParams::with_offset(6, 2, 8), Error);  // l < 0
    CHECK_THROWS_AS(SumParams::with_offset(4, 5, 0), Error);  // antichain does not fit
    const auto p = SumParams::automatic(8, 2);
    CHECK(p.a == 2);
    CHECK(p.ell == 3);
  }

  TEST_CASE("conjecture construction attains the conjectured value") {
    for (int k = 2; k <= 6; ++k)
      for (int n = lstar(k); n <= 10; ++n) {
        const auto p = ConjectureParams::make(n, k);
        const auto t = build_conjecture_tuple(p);
        CHECK(Rational(measures(t).product) == eval_bound(BoundId::GerbnerConjUpper, n, k).exact);
        for (const auto& f : t.families) CHECK(f.size() == (std::size_t{1} << (n - p.ell)));
        if (n <= 7) CHECK(oracle::cross_sperner(t));
      }
    try {
      ConjectureParams::make(6, 4, 2);
      FAIL("expected AntichainTooSmall");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::AntichainTooSmall);
    }
    CHECK_THROWS_AS(ConjectureParams::make(3, 2, 4), Error);
  }

  TEST_CASE("merging a cross-Sperner tuple keeps it cross-Sperner") {
    std::vector<FamilyTuple> tuples;
    for (int n = 3; n <= 9; ++n)
      for (int k = 2; k <= std::min(n, 5); ++k) {
        tuples.push_back(build_product_tuple(ProductParams::defaults(n, k)));
        if (n >= lstar(k)) tuples.push_back(build_conjecture_tuple(ConjectureParams::make(n, k)));
      }
    for (const auto& t : tuples)
      for (std::size_t j = 1; j < t.k(); ++j) {
        const auto [lo, hi] = merge_partition(t, j);
        const FamilyTuple merged{t.n, {lo, hi}};
        CHECK(is_cross_sperner(merged).ok);
        if (t.n <= 6) CHECK(oracle::cross_sperner(merged));
      }
  }
}
