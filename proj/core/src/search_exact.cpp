#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <chrono>
#include <mutex>
#include <string>
#include <thread>

#include "sperner/constructions.hpp"
#include "sperner/search.hpp"

namespace sperner {

namespace {

using Clock = std::chrono::steady_clock;

// Labelling state after deciding masks 0..depth-1. Masks are decided in
// ascending order, which is a linear extension of inclusion, and labels are
// introduced in first-use order, so label order equals the canonical family
// order (by smallest member).
struct Node {
  std::array<std::uint64_t, kMaxExactLabels> near{};  // comparable to some mask with label j
  std::array<std::uint64_t, kMaxExactLabels> lab{};
  std::array<std::uint32_t, kMaxExactLabels> size{};
  int used = 0;
  int depth = 0;
  std::uint64_t unused = 0;
};

// Ascending member lists of two single-word families, lexicographically.
bool word_lex_less(std::uint64_t a, std::uint64_t b) {
  const std::uint64_t diff = a ^ b;
  if (!diff) return false;
  const int bit = std::countr_zero(diff);
  const bool a_has = (a >> bit) & 1u;
  const std::uint64_t other = a_has ? b : a;
  const bool other_has_more = bit < 63 && (other >> (bit + 1)) != 0;
  return a_has ? other_has_more : !other_has_more;
}

struct Best {
  std::uint64_t value = 0;
  int k = 0;
  std::array<std::uint64_t, kMaxExactLabels> lab{};
  bool found = false;

  bool improves_on(const Best& o) const {
    if (!found) return false;
    if (!o.found || value != o.value) return !o.found || value > o.value;
    for (int j = 0; j < k; ++j) {
      if (word_lex_less(lab[j], o.lab[j])) return true;
      if (word_lex_less(o.lab[j], lab[j])) return false;
    }
    return false;
  }
};

struct Shared {
  std::atomic<std::uint64_t> best{0};
  std::atomic<std::uint64_t> nodes{0};
  std::atomic<bool> stop{false};
  std::atomic<bool> exhausted{false};
  Clock::time_point start = Clock::now();
};

class Engine {
 public:
  Engine(const SearchConfig& cfg, Shared& shared)
      : cfg_(cfg), shared_(shared), universe_(1u << cfg.n), k_(cfg.k) {
    full_ = universe_ == 64 ? ~0ull : (std::uint64_t{1} << universe_) - 1;
    for (std::uint32_t x = 0; x < universe_; ++x) {
      std::uint64_t c = 0;
      for (std::uint32_t y = 0; y < universe_; ++y)
        if (comparable(x, y)) c |= std::uint64_t{1} << y;
      cmp_[x] = c;
    }
  }

  // Calls visit(child) for every admissible child of s; returns false when s
  // is pruned outright.
  template <typename Visit>
  bool expand(const Node& s, Visit&& visit) {
    std::uint64_t one = 0, two = 0;
    for (int j = 0; j < s.used; ++j) {
      two |= one & s.near[j];
      one |= s.near[j];
    }
    const std::uint64_t future = s.depth >= 64 ? 0 : (full_ & (~0ull << s.depth));
    // A future mask can still take some label iff it is comparable to at
    // most one existing label.
    const std::uint64_t open = future & ~two;
    const int free_labels = k_ - s.used;
    if (free_labels > std::popcount(future & ~one)) return false;
    if (bound(s, static_cast<std::uint32_t>(std::popcount(open))) < shared_.best.load(std::memory_order_relaxed))
      return false;
    // Masks left unused must end up comparable to two distinct labels.
    for (std::uint64_t pending = s.unused & ~two; pending; pending &= pending - 1) {
      const int x = std::countr_zero(pending);
      if (!(cmp_[x] & open)) return false;
    }

    const int x = s.depth;
    const std::uint64_t bit = std::uint64_t{1} << x;
    for (int j = 0; j < s.used; ++j) {
      const bool allowed = !(one & bit) || (!(two & bit) && (s.near[j] & bit));
      if (allowed) visit(with_label(s, j, x));
    }
    if (s.used < k_ && !(one & bit)) visit(with_label(s, s.used, x));
    Node skip = s;
    skip.unused |= bit;
    skip.depth = x + 1;
    visit(skip);
    return true;
  }

  void dfs(const Node& s) {
    if (shared_.stop.load(std::memory_order_relaxed)) return;
    if ((++local_nodes_ & 0x3FF) == 0) flush_nodes();
    if (s.depth == static_cast<int>(universe_)) {
      leaf(s);
      return;
    }
    expand(s, [this](const Node& child) { dfs(child); });
  }

  void finish() { flush_nodes(); }

  const Best& best() const { return best_; }

 private:
  Node with_label(const Node& s, int j, int x) const {
    Node c = s;
    c.near[j] |= cmp_[x];
    c.lab[j] |= std::uint64_t{1} << x;
    ++c.size[j];
    if (j == c.used) ++c.used;
    c.depth = x + 1;
    return c;
  }

  std::uint64_t bound(const Node& s, std::uint32_t open) const {
    if (cfg_.measure == Measure::Sum) {
      std::uint64_t total = open;
      for (int j = 0; j < s.used; ++j) total += s.size[j];
      return total;
    }
    std::array<std::uint32_t, kMaxExactLabels> sizes{};
    for (int j = 0; j < s.used; ++j) sizes[j] = s.size[j];
    // Water-fill the open masks onto the smallest families.
    for (; open > 0; --open) {
      auto it = std::min_element(sizes.begin(), sizes.begin() + k_);
      ++*it;
    }
    std::uint64_t product = 1;
    for (int j = 0; j < k_; ++j) product *= sizes[j];
    return product;
  }

  void leaf(const Node& s) {
    if (s.used != k_) return;
    std::uint64_t one = 0, two = 0;
    for (int j = 0; j < s.used; ++j) {
      two |= one & s.near[j];
      one |= s.near[j];
    }
    if (s.unused & ~two) return;  // not maximal, hence not optimal
    Best cand;
    cand.found = true;
    cand.k = k_;
    cand.lab = s.lab;
    cand.value = cfg_.measure == Measure::Sum ? 0 : 1;
    for (int j = 0; j < k_; ++j) {
      if (cfg_.measure == Measure::Sum)
        cand.value += s.size[j];
      else
        cand.value *= s.size[j];
    }
    if (cand.improves_on(best_)) best_ = cand;
    std::uint64_t cur = shared_.best.load(std::memory_order_relaxed);
    while (cand.value > cur && !shared_.best.compare_exchange_weak(cur, cand.value)) {
    }
  }

  void flush_nodes() {
    const std::uint64_t total = shared_.nodes.fetch_add(local_nodes_ - flushed_) + (local_nodes_ - flushed_);
    flushed_ = local_nodes_;
    bool over = cfg_.budget.max_nodes && total >= cfg_.budget.max_nodes;
    if (!over && cfg_.budget.max_seconds > 0) {
      const double secs = std::chrono::duration<double>(Clock::now() - shared_.start).count();
      over = secs >= cfg_.budget.max_seconds;
    }
    if (over) {
      shared_.exhausted = true;
      shared_.stop = true;
    }
  }

  const SearchConfig& cfg_;
  Shared& shared_;
  std::uint32_t universe_;
  int k_;
  std::uint64_t full_ = 0;
  std::array<std::uint64_t, 64> cmp_{};
  std::uint64_t local_nodes_ = 0;
  std::uint64_t flushed_ = 0;
  Best best_;
};

// Best value among the explicit constructions; a valid starting incumbent
// because every one of them is achievable.
std::uint64_t construction_floor(const SearchConfig& cfg) {
  std::uint64_t best = 0;
  auto consider = [&](auto&& build) {
    try {
      const FamilyTuple t = build();
      const auto m = measures(t);
      const BigInt v = cfg.measure == Measure::Sum ? m.sum : m.product;
      best = std::max(best, v.convert_to<std::uint64_t>());
    } catch (const Error&) {
    }
  };
  const int n = cfg.n, k = cfg.k;
  if (k == 2) {
    consider([&] { return build_pair_product(n); });
    consider([&] { return build_pair_sum(n); });
  }
  consider([&] { return build_product_tuple(ProductParams::defaults(n, k)); });
  consider([&] { return build_sum_tuple(SumParams::automatic(n, k)); });
  return best;
}

void validate_exact(const SearchConfig& cfg) {
  check_ground(cfg.n);
  if (cfg.n > kMaxExactGround)
    throw Error(ErrorCode::GroundTooLarge, "exact search supports n <= " + std::to_string(kMaxExactGround) +
                                               ", got n=" + std::to_string(cfg.n));
  if (cfg.k < 2 || cfg.k > kMaxExactLabels)
    throw Error(ErrorCode::BadConfig, "exact search needs 2 <= k <= " + std::to_string(kMaxExactLabels));
  if (cfg.threads < 1) throw Error(ErrorCode::BadConfig, "threads must be positive");
}

}  // namespace

SearchResult exact_search(const SearchConfig& cfg) {
  validate_exact(cfg);
  Shared shared;
  shared.best = construction_floor(cfg);

  // Split the tree into a deterministic frontier of subproblems.
  std::vector<Node> frontier{Node{}};
  {
    Engine splitter(cfg, shared);
    const std::size_t want = cfg.threads > 1 ? 64u * static_cast<std::size_t>(cfg.threads) : 1u;
    const int max_depth = (1 << cfg.n) / 2;
    while (frontier.size() < want && !frontier.empty() && frontier.front().depth < max_depth) {
      std::vector<Node> next;
      for (const Node& s : frontier) splitter.expand(s, [&](const Node& c) { next.push_back(c); });
      frontier = std::move(next);
    }
  }

  const int workers = std::max(1, std::min<int>(cfg.threads, static_cast<int>(frontier.size())));
  std::vector<Best> results(static_cast<std::size_t>(workers));
  std::atomic<std::size_t> next_task{0};
  auto work = [&](int w) {
    Engine engine(cfg, shared);
    for (std::size_t i = next_task++; i < frontier.size(); i = next_task++) engine.dfs(frontier[i]);
    engine.finish();
    results[static_cast<std::size_t>(w)] = engine.best();
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }

  Best best;
  for (const auto& r : results)
    if (r.improves_on(best)) best = r;

  SearchResult out;
  out.nodes = shared.nodes.load();
  out.elapsed_seconds = std::chrono::duration<double>(Clock::now() - shared.start).count();
  out.budget_exhausted = shared.exhausted.load();
  out.optimal = !out.budget_exhausted;
  if (best.found) {
    out.found = true;
    out.value = best.value;
    out.witness.n = cfg.n;
    for (int j = 0; j < cfg.k; ++j) {
      Family f(cfg.n);
      for (std::uint64_t w = best.lab[j]; w; w &= w - 1) f.insert(static_cast<SetMask>(std::countr_zero(w)));
      out.witness.families.push_back(std::move(f));
    }
  } else if (out.budget_exhausted) {
    // Fall back to the incumbent construction.
    const std::uint64_t floor = construction_floor(cfg);
    if (floor > 0) {
      auto try_build = [&](auto&& build) {
        if (out.found) return;
        try {
          FamilyTuple t = build();
          const auto m = measures(t);
          if ((cfg.measure == Measure::Sum ? m.sum : m.product) == floor) {
            out.found = true;
            out.value = floor;
            out.witness = canonicalize(t);
          }
        } catch (const Error&) {
        }
      };
      if (cfg.k == 2) {
        try_build([&] { return build_pair_product(cfg.n); });
        try_build([&] { return build_pair_sum(cfg.n); });
      }
      try_build([&] { return build_product_tuple(ProductParams::defaults(cfg.n, cfg.k)); });
      try_build([&] { return build_sum_tuple(SumParams::automatic(cfg.n, cfg.k)); });
    }
  }
  if (cfg.target && out.found) out.target_met = out.value >= *cfg.target;
  return out;
}

SearchResult exact_pi(SearchConfig cfg) {
  cfg.measure = Measure::Product;
  cfg.mode = SearchMode::Exact;
  return exact_search(cfg);
}

SearchResult exact_sigma(SearchConfig cfg) {
  cfg.measure = Measure::Sum;
  cfg.mode = SearchMode::Exact;
  return exact_search(cfg);
}

}  // namespace sperner
