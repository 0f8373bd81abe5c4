#include <algorithm>
#include <bit>
#include <limits>
#include <stdexcept>
#include <string>
#include <thread>
#include <tuple>

#include "sperner/bounds.hpp"
#include "sperner/search.hpp"

namespace sperner {

namespace {

void require_small(int n, int limit, const char* what) {
  if (n < 0) throw Error(ErrorCode::BadGround, std::string(what) + ": n must be non-negative");
  if (n > limit)
    throw Error(ErrorCode::GroundTooLarge, std::string(what) + " supports n <= " + std::to_string(limit) +
                                               ", got n=" + std::to_string(n));
}

std::vector<std::uint64_t> upsets_rec(int n) {
  if (n == 0) return {0, 1};  // {} and {∅}
  const auto lower = upsets_rec(n - 1);
  const unsigned half = 1u << (n - 1);
  std::vector<std::uint64_t> out;
  // Split on element n: U0 = members without n, U1 = members with n (minus n).
  // U is an upset iff U0 and U1 are upsets and U0 ⊆ U1.
  for (std::uint64_t u0 : lower)
    for (std::uint64_t u1 : lower)
      if ((u0 & ~u1) == 0) out.push_back(u0 | (u1 << half));
  return out;
}

struct PairBest {
  std::uint64_t value = std::numeric_limits<std::uint64_t>::max();
  std::size_t up = 0;
  std::size_t down = 0;
};

bool better(const PairBest& a, const PairBest& b) {
  if (a.value != b.value) return a.value < b.value;
  return std::tie(a.up, a.down) < std::tie(b.up, b.down);
}

}  // namespace

std::vector<std::uint64_t> upset_words(int n) {
  require_small(n, kMaxExactGround, "enumerate_monotone");
  return upsets_rec(n);
}

void for_each_upset(int n, const std::function<void(std::uint64_t)>& visit) {
  for (std::uint64_t w : upset_words(n)) visit(w);
}

std::vector<Family> enumerate_monotone(int n) {
  std::vector<Family> out;
  for (std::uint64_t w : upset_words(n)) out.push_back(Family::from_words(n, {w}));
  return out;
}

std::uint64_t dual_word(int n, std::uint64_t upset) {
  const std::uint32_t top = (1u << n) - 1;
  std::uint64_t out = 0;
  for (std::uint64_t w = upset; w; w &= w - 1) {
    const std::uint32_t x = static_cast<std::uint32_t>(std::countr_zero(w));
    out |= std::uint64_t{1} << (top ^ x);
  }
  return out;
}

CompTable exact_comp_table(int n, int threads) {
  require_small(n, kMaxExactGround, "exact_comp_table");
  const auto ups = upset_words(n);
  std::vector<std::uint64_t> downs;
  downs.reserve(ups.size());
  for (std::uint64_t u : ups) downs.push_back(dual_word(n, u));

  const std::size_t universe = std::size_t{1} << n;
  const int workers = std::max(1, threads);
  std::vector<std::vector<PairBest>> partial(static_cast<std::size_t>(workers),
                                            std::vector<PairBest>(universe + 1));
  auto scan = [&](int w) {
    auto& best = partial[static_cast<std::size_t>(w)];
    for (std::size_t i = static_cast<std::size_t>(w); i < ups.size(); i += static_cast<std::size_t>(workers)) {
      const std::uint64_t u = ups[i];
      const int nu = std::popcount(u);
      for (std::size_t j = 0; j < downs.size(); ++j) {
        const std::uint64_t d = downs[j];
        const int t = std::popcount(u & d);
        const std::uint64_t value = static_cast<std::uint64_t>(nu + std::popcount(d) - t);
        PairBest cand{value, i, j};
        if (better(cand, best[static_cast<std::size_t>(t)])) best[static_cast<std::size_t>(t)] = cand;
      }
    }
  };
  if (workers == 1) {
    scan(0);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(scan, w);
    for (auto& th : pool) th.join();
  }
  std::vector<PairBest> by_t(universe + 1);
  for (const auto& part : partial)
    for (std::size_t t = 0; t <= universe; ++t)
      if (better(part[t], by_t[t])) by_t[t] = part[t];

  CompTable table;
  table.n = n;
  table.rows.resize(universe);
  PairBest running;
  std::size_t running_t = 0;
  for (std::size_t m = universe; m >= 1; --m) {
    // Suffix minimum over t >= m; ties keep the larger t.
    if (by_t[m].value < running.value) {
      running = by_t[m];
      running_t = m;
    }
    CompRow row;
    row.m = m;
    row.c_exact = running.value;
    row.lower_bound = comp_lower_ceil(n, BigInt(m)).convert_to<std::uint64_t>();
    row.equality = row.c_exact == row.lower_bound;

    // U ∩ D is convex; dropping its largest mask (always maximal) keeps it
    // convex and cannot raise the comparability number.
    std::uint64_t core = ups[running.up] & downs[running.down];
    for (std::size_t size = running_t; size > m; --size) core &= ~(std::uint64_t{1} << (63 - std::countl_zero(core)));
    row.witness = Family::from_words(n, {core});
    if (comparability_number(row.witness).count != row.c_exact)
      throw std::logic_error("comparability table witness does not attain c(n,m)");
    table.rows[m - 1] = std::move(row);
  }
  return table;
}

// ---------------------------------------------------------------------------
// Oracle

namespace {

// Sizes of the connected components of the comparability graph on support.
std::vector<std::uint32_t> component_sizes(int n, std::uint32_t support) {
  const std::uint32_t universe = 1u << n;
  std::vector<std::uint32_t> sizes;
  std::uint32_t seen = 0;
  for (std::uint32_t root = 0; root < universe; ++root) {
    if (!((support >> root) & 1u) || ((seen >> root) & 1u)) continue;
    std::vector<std::uint32_t> stack{root};
    seen |= 1u << root;
    std::uint32_t count = 0;
    while (!stack.empty()) {
      const std::uint32_t x = stack.back();
      stack.pop_back();
      ++count;
      for (std::uint32_t y = 0; y < universe; ++y) {
        const bool fresh = ((support >> y) & 1u) && !((seen >> y) & 1u);
        if (fresh && comparable(x, y)) {
          seen |= 1u << y;
          stack.push_back(y);
        }
      }
    }
    sizes.push_back(count);
  }
  return sizes;
}

// Best measure over partitions of the components into exactly k groups,
// enumerated as restricted growth strings.
std::uint64_t best_partition(const std::vector<std::uint32_t>& sizes, int k, Measure measure) {
  if (static_cast<int>(sizes.size()) < k) return 0;
  std::vector<std::uint64_t> group(static_cast<std::size_t>(k), 0);
  std::uint64_t best = 0;
  auto rec = [&](auto&& self, std::size_t i, int used) -> void {
    if (static_cast<int>(sizes.size() - i) < k - used) return;
    if (i == sizes.size()) {
      std::uint64_t v = measure == Measure::Sum ? 0 : 1;
      for (auto g : group) v = measure == Measure::Sum ? v + g : v * g;
      best = std::max(best, v);
      return;
    }
    for (int g = 0; g < std::min(used + 1, k); ++g) {
      group[static_cast<std::size_t>(g)] += sizes[i];
      self(self, i + 1, std::max(used, g + 1));
      group[static_cast<std::size_t>(g)] -= sizes[i];
    }
  };
  rec(rec, 0, 0);
  return best;
}

}  // namespace

std::uint64_t oracle_small(int n, int k, Measure measure) {
  require_small(n, 3, "oracle_small");
  if (k < 2) throw Error(ErrorCode::BadConfig, "oracle_small requires k >= 2");
  const std::uint32_t universe = 1u << n;
  std::uint64_t best = 0;
  for (std::uint64_t support = 1; support < (std::uint64_t{1} << universe); ++support)
    best = std::max(best, best_partition(component_sizes(n, static_cast<std::uint32_t>(support)), k, measure));
  return best;
}

}  // namespace sperner
