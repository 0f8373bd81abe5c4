#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <memory>
#include <random>
#include <string>
#include <thread>

#include "sperner/constructions.hpp"
#include "sperner/search.hpp"

namespace sperner {

namespace {

using Clock = std::chrono::steady_clock;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// Visits every mask comparable to x other than x itself.
template <typename Fn>
void for_each_comparable(SetMask x, SetMask full, Fn&& fn) {
  for (SetMask s = (x - 1) & x;; s = (s - 1) & x) {  // proper subsets
    if (s != x) fn(s);
    if (s == 0) break;
  }
  const SetMask rest = full & ~x;
  for (SetMask s = rest; s; s = (s - 1) & rest) fn(x | s);  // proper supersets
}

// A labelling of P([n]) (0 = unused, 1..k = family) with per-mask counts of
// comparable masks carrying each label. A mask may join family j iff it is
// comparable to no mask of any other family.
class Labelling {
 public:
  Labelling(int n, int k)
      : n_(n), k_(k), full_(static_cast<SetMask>(universe_size(n) - 1)),
        label_(universe_size(n), 0), count_(universe_size(n) * static_cast<std::size_t>(k), 0),
        size_(static_cast<std::size_t>(k) + 1, 0) {}

  int k() const { return k_; }
  SetMask full() const { return full_; }
  std::size_t universe() const { return label_.size(); }
  int label(SetMask x) const { return label_[x]; }
  std::uint64_t size(int j) const { return size_[static_cast<std::size_t>(j)]; }

  bool allowed(SetMask x, int j) const {
    const std::uint32_t* c = &count_[static_cast<std::size_t>(x) * static_cast<std::size_t>(k_)];
    for (int i = 0; i < k_; ++i)
      if (i != j - 1 && c[i]) return false;
    return true;
  }

  void assign(SetMask x, int j) {
    label_[x] = static_cast<std::uint8_t>(j);
    ++size_[static_cast<std::size_t>(j)];
    for_each_comparable(x, full_, [&](SetMask y) { ++count_[slot(y, j)]; });
  }

  void unassign(SetMask x) {
    const int j = label_[x];
    if (!j) return;
    label_[x] = 0;
    --size_[static_cast<std::size_t>(j)];
    for_each_comparable(x, full_, [&](SetMask y) { --count_[slot(y, j)]; });
  }

  FamilyTuple tuple() const {
    FamilyTuple t{n_, std::vector<Family>(static_cast<std::size_t>(k_), Family(n_))};
    for (SetMask x = 0; x < label_.size(); ++x)
      if (label_[x]) t.families[label_[x] - 1u].insert(x);
    return t;
  }

 private:
  std::size_t slot(SetMask y, int j) const {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(k_) + static_cast<std::size_t>(j - 1);
  }

  int n_;
  int k_;
  SetMask full_;
  std::vector<std::uint8_t> label_;
  std::vector<std::uint32_t> count_;
  std::vector<std::uint64_t> size_;
};

class Chain {
 public:
  Chain(const SearchConfig& cfg, std::uint64_t seed, std::uint64_t max_moves, Clock::time_point start)
      : cfg_(cfg), state_(cfg.n, cfg.k), rng_(seed), max_moves_(max_moves), start_(start) {}

  void run() {
    const std::uint64_t per_restart = std::max<std::uint64_t>(2000, 400 * state_.universe());
    for (int restart = 0; !done(); ++restart) {
      seed_state(restart);
      record();
      anneal(max_moves_ ? std::min(per_restart, max_moves_ - moves_) : per_restart);
    }
  }

  bool found() const { return found_; }
  const BigInt& best_value() const { return best_value_; }
  const FamilyTuple& best_tuple() const { return best_tuple_; }
  std::uint64_t moves() const { return moves_; }
  bool timed_out() const { return timed_out_; }
  bool target_met() const { return cfg_.target && found_ && best_value_ >= *cfg_.target; }

 private:
  bool done() {
    if (target_met()) return true;
    if (max_moves_ && moves_ >= max_moves_) return true;
    if (cfg_.budget.max_seconds > 0 && (moves_ & 0xFF) == 0) {
      timed_out_ = std::chrono::duration<double>(Clock::now() - start_).count() >= cfg_.budget.max_seconds;
    }
    return timed_out_;
  }

  double objective() const {
    double v = 0;
    for (int j = 1; j <= cfg_.k; ++j) {
      const auto s = state_.size(j);
      if (cfg_.measure == Measure::Sum) {
        v += static_cast<double>(s);
      } else {
        if (s == 0) return -std::numeric_limits<double>::infinity();
        v += std::log(static_cast<double>(s));
      }
    }
    return v;
  }

  bool any_empty() const {
    for (int j = 1; j <= cfg_.k; ++j)
      if (state_.size(j) == 0) return true;
    return false;
  }

  void clear() {
    for (SetMask x = 0; x < state_.universe(); ++x) state_.unassign(x);
  }

  // Restart 0 starts from the default product construction, later restarts
  // perturb its segment sizes or start empty, and every start is completed
  // greedily to a maximal labelling.
  void seed_state(int restart) {
    clear();
    const int mode = restart == 0 ? 0 : static_cast<int>(rng_() % 3);
    if (mode < 2) {
      try {
        ProductParams p = ProductParams::defaults(cfg_.n, cfg_.k);
        if (mode == 1) {
          const auto blocks = p.blocks();
          for (std::size_t i = 0; i < blocks.size(); ++i) {
            const std::uint64_t span = std::uint64_t{1} << blocks[i].size();
            if (span > 2) p.segments[i] = 1 + rng_() % (span - 1);
          }
        }
        const FamilyTuple t = build_product_tuple(p);
        for (std::size_t j = 0; j < t.families.size(); ++j)
          for (SetMask x : t.families[j].masks()) state_.assign(x, static_cast<int>(j) + 1);
      } catch (const Error&) {
      }
    }
    std::vector<SetMask> all(state_.universe());
    for (SetMask x = 0; x < all.size(); ++x) all[x] = x;
    std::shuffle(all.begin(), all.end(), rng_);
    fill(all, std::numeric_limits<SetMask>::max());
  }

  // Adds each unused candidate to the smallest family that may take it.
  void fill(const std::vector<SetMask>& candidates, SetMask skip) {
    for (SetMask y : candidates) {
      if (y == skip || state_.label(y)) continue;
      int pick = 0;
      std::uint64_t pick_size = 0;
      int ties = 0;
      for (int j = 1; j <= cfg_.k; ++j) {
        if (!state_.allowed(y, j)) continue;
        const auto s = state_.size(j);
        if (!pick || s < pick_size) {
          pick = j;
          pick_size = s;
          ties = 1;
        } else if (s == pick_size && rng_() % static_cast<std::uint64_t>(++ties) == 0) {
          pick = j;
        }
      }
      if (pick) {
        state_.assign(y, pick);
        log_.push_back({y, 0});
      }
    }
  }

  struct Change {
    SetMask mask;
    int old_label;
  };

  void set_label(SetMask x, int j) {
    const int old = state_.label(x);
    if (old == j) return;
    log_.push_back({x, old});
    state_.unassign(x);
    if (j) state_.assign(x, j);
  }

  void rollback() {
    for (auto it = log_.rbegin(); it != log_.rend(); ++it) {
      state_.unassign(it->mask);
      if (it->old_label) state_.assign(it->mask, it->old_label);
    }
    log_.clear();
  }

  // Forces x into family j, evicting every comparable mask of another
  // family, then refills around the evicted masks.
  void eject_move() {
    const SetMask x = static_cast<SetMask>(rng_() % state_.universe());
    int j = 1 + static_cast<int>(rng_() % static_cast<std::uint64_t>(cfg_.k));
    if (j == state_.label(x)) j = 1 + j % cfg_.k;
    std::vector<SetMask> touched;
    for_each_comparable(x, state_.full(), [&](SetMask y) {
      const int l = state_.label(y);
      if (l && l != j) touched.push_back(y);
    });
    for (SetMask y : touched) set_label(y, 0);
    set_label(x, j);
    std::vector<SetMask> candidates = touched;
    for (SetMask y : touched) for_each_comparable(y, state_.full(), [&](SetMask z) { candidates.push_back(z); });
    std::shuffle(candidates.begin(), candidates.end(), rng_);
    fill(candidates, std::numeric_limits<SetMask>::max());
  }

  // Drops an assigned mask and lets its neighbourhood regrow.
  void drop_move() {
    const SetMask x = static_cast<SetMask>(rng_() % state_.universe());
    if (!state_.label(x)) return;
    set_label(x, 0);
    std::vector<SetMask> candidates;
    for_each_comparable(x, state_.full(), [&](SetMask z) { candidates.push_back(z); });
    std::shuffle(candidates.begin(), candidates.end(), rng_);
    fill(candidates, x);
  }

  void anneal(std::uint64_t steps) {
    if (steps == 0) return;
    constexpr double kHot = 0.6, kCold = 0.002;
    const double scale = cfg_.measure == Measure::Sum ? 4.0 : 1.0;
    const double cooling = std::pow(kCold / kHot, 1.0 / static_cast<double>(steps));
    double temperature = kHot * scale;
    double current = objective();
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (std::uint64_t s = 0; s < steps && !done(); ++s, ++moves_, temperature *= cooling) {
      log_.clear();
      if (rng_() % 4 == 0)
        drop_move();
      else
        eject_move();
      const double next = any_empty() ? -std::numeric_limits<double>::infinity() : objective();
      const double delta = next - current;
      if (std::isfinite(next) && (delta >= 0 || unit(rng_) < std::exp(delta / temperature))) {
        current = next;
        if (current >= best_objective_ - 1e-9) record();
      } else {
        rollback();
      }
    }
  }

  void record() {
    if (any_empty()) return;
    BigInt v = cfg_.measure == Measure::Sum ? BigInt(0) : BigInt(1);
    for (int j = 1; j <= cfg_.k; ++j) {
      if (cfg_.measure == Measure::Sum)
        v += state_.size(j);
      else
        v *= state_.size(j);
    }
    if (found_ && v < best_value_) return;
    FamilyTuple t = canonicalize(state_.tuple());
    if (!found_ || v > best_value_ || canonical_less(t, best_tuple_)) {
      found_ = true;
      best_value_ = v;
      best_tuple_ = std::move(t);
      best_objective_ = objective();
    }
  }

  const SearchConfig& cfg_;
  Labelling state_;
  std::mt19937_64 rng_;
  std::uint64_t max_moves_;
  Clock::time_point start_;
  std::uint64_t moves_ = 0;
  bool timed_out_ = false;
  std::vector<Change> log_;

  bool found_ = false;
  BigInt best_value_ = 0;
  double best_objective_ = -std::numeric_limits<double>::infinity();
  FamilyTuple best_tuple_;
};

}  // namespace

std::optional<BigInt> reference_value(Measure measure, int n, int k) {
  if (measure != Measure::Product) return std::nullopt;
  struct Ref {
    int n, k;
    long value;
  };
  constexpr Ref kRefs[] = {{4, 3, 9}, {5, 3, 81}, {6, 3, 810}, {5, 4, 108}};
  for (const auto& r : kRefs)
    if (r.n == n && r.k == k) return BigInt(r.value);
  return std::nullopt;
}

SearchResult heuristic_search(const SearchConfig& cfg) {
  check_ground(cfg.n);
  if (cfg.k < 2 || cfg.k > 255) throw Error(ErrorCode::BadConfig, "heuristic search needs 2 <= k <= 255");
  if (cfg.threads < 1) throw Error(ErrorCode::BadConfig, "threads must be positive");
  if (cfg.budget.max_nodes == 0 && cfg.budget.max_seconds <= 0 && !cfg.target)
    throw Error(ErrorCode::BadConfig, "heuristic search needs a node budget, a time budget or a target");

  const auto start = Clock::now();
  const int workers = cfg.threads;
  const std::uint64_t per_chain =
      cfg.budget.max_nodes ? std::max<std::uint64_t>(1, cfg.budget.max_nodes / static_cast<std::uint64_t>(workers)) : 0;
  std::vector<std::unique_ptr<Chain>> chains;
  for (int w = 0; w < workers; ++w)
    chains.push_back(std::make_unique<Chain>(cfg, splitmix64(cfg.seed ^ splitmix64(static_cast<std::uint64_t>(w))),
                                             per_chain, start));
  if (workers == 1) {
    chains[0]->run();
  } else {
    std::vector<std::thread> pool;
    for (auto& c : chains) pool.emplace_back([&c] { c->run(); });
    for (auto& t : pool) t.join();
  }

  SearchResult out;
  for (const auto& c : chains) {
    out.nodes += c->moves();
    out.budget_exhausted = out.budget_exhausted || c->timed_out();
    if (!c->found()) continue;
    if (!out.found || c->best_value() > out.value ||
        (c->best_value() == out.value && canonical_less(c->best_tuple(), out.witness))) {
      out.found = true;
      out.value = c->best_value();
      out.witness = c->best_tuple();
    }
  }
  out.optimal = false;
  out.target_met = cfg.target && out.found && out.value >= *cfg.target;
  if (!out.target_met && cfg.target) out.budget_exhausted = true;
  out.elapsed_seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return out;
}

SearchResult heuristic_pi(SearchConfig cfg) {
  cfg.measure = Measure::Product;
  cfg.mode = SearchMode::Heuristic;
  return heuristic_search(cfg);
}

}  // namespace sperner
