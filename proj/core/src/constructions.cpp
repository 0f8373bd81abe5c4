#include "sperner/constructions.hpp"

#include <bit>
#include <string>

#include "sperner/bounds.hpp"

namespace sperner {

namespace {

std::string str(long long v) { return std::to_string(v); }

void require_pair_ground(int n) {
  check_ground(n);
  if (n < 2) throw Error(ErrorCode::BadGround, "pair constructions require n >= 2, got n=" + str(n));
}

FamilyTuple verified(FamilyTuple t, const char* builder) {
  auto check = is_cross_sperner(t);
  if (!check.ok)
    throw std::logic_error(std::string(builder) + " produced a tuple that is not cross-Sperner");
  return t;
}

SetMask range_mask(int lo, int hi) {  // elements lo..hi, 1-based inclusive
  SetMask m = 0;
  for (int e = lo; e <= hi; ++e) m |= SetMask{1} << (e - 1);
  return m;
}

void require_k(int k) {
  if (k < 2) throw Error(ErrorCode::BadConfig, "k must be at least 2, got k=" + str(k));
}

}  // namespace

FamilyTuple build_pair_product(int n) {
  require_pair_ground(n);
  const SetMask first = 1u, last = SetMask{1} << (n - 1);
  FamilyTuple t{n, {Family(n), Family(n)}};
  for (SetMask x = 0; x < universe_size(n); ++x) {
    const bool has_first = x & first, has_last = x & last;
    if (has_first && !has_last) t.families[0].insert(x);
    if (!has_first && has_last) t.families[1].insert(x);
  }
  return verified(std::move(t), "build_pair_product");
}

FamilyTuple build_pair_sum(int n) {
  require_pair_ground(n);
  const SetMask half[] = {range_mask(1, n / 2)};
  Family f = Family::from_masks(n, half);
  Family g = incomparable_complement(f);
  return verified(FamilyTuple{n, {std::move(f), std::move(g)}}, "build_pair_sum");
}

// ---------------------------------------------------------------------------
// Product construction

std::vector<std::vector<int>> contiguous_blocks(int n, int k) {
  std::vector<std::vector<int>> blocks(static_cast<std::size_t>(k));
  int next = 1;
  for (int i = 0; i < k; ++i) {
    const int len = n / k + (i < n % k ? 1 : 0);
    for (int j = 0; j < len; ++j) blocks[static_cast<std::size_t>(i)].push_back(next++);
  }
  return blocks;
}

ProductParams ProductParams::defaults(int n, int k) {
  check_ground(n);
  require_k(k);
  ProductParams p{n, k, {}};
  for (const auto& block : contiguous_blocks(n, k)) {
    const std::uint64_t span = std::uint64_t{1} << block.size();
    p.segments.push_back(std::max<std::uint64_t>(1, span / static_cast<std::uint64_t>(k)));
  }
  return p;
}

std::vector<std::vector<int>> ProductParams::blocks() const { return contiguous_blocks(n, k); }

std::vector<std::uint64_t> ProductParams::predicted_sizes() const {
  const auto bl = blocks();
  std::vector<std::uint64_t> out(bl.size(), 0);
  for (std::size_t i = 0; i < bl.size(); ++i) {
    std::uint64_t v = segments.at(i);
    for (std::size_t j = 0; j < bl.size(); ++j)
      if (j != i) v *= (std::uint64_t{1} << bl[j].size()) - segments.at(j);
    out[i] = v;
  }
  return out;
}

FamilyTuple build_product_tuple(const ProductParams& p) {
  check_ground(p.n);
  require_k(p.k);
  const auto bl = p.blocks();
  if (p.segments.size() != bl.size())
    throw Error(ErrorCode::BadSegmentSize, "expected " + str(p.k) + " segment sizes, got " +
                                               str(static_cast<long long>(p.segments.size())));
  for (std::size_t i = 0; i < bl.size(); ++i) {
    const std::uint64_t span = std::uint64_t{1} << bl[i].size();
    const std::uint64_t t = p.segments[i];
    if (t < 1 || t > span)
      throw Error(ErrorCode::BadSegmentSize, "segment size t_" + str(static_cast<long long>(i + 1)) + "=" +
                                                 str(static_cast<long long>(t)) + " outside 1.." +
                                                 str(static_cast<long long>(span)));
    if (t == span)
      throw Error(ErrorCode::EmptyBlock, "block " + str(static_cast<long long>(i + 1)) + " of size " +
                                             str(static_cast<long long>(bl[i].size())) +
                                             " leaves no room for Y (need t_i < 2^|A_i|)");
  }

  // Blocks are contiguous, so F ∩ A_i read as a local bitmask is its colex
  // rank inside P(A_i).
  std::vector<int> offset(bl.size());
  std::vector<SetMask> local_mask(bl.size());
  for (std::size_t i = 0; i < bl.size(); ++i) {
    offset[i] = bl[i].empty() ? 0 : bl[i].front() - 1;
    local_mask[i] = static_cast<SetMask>((std::uint64_t{1} << bl[i].size()) - 1);
  }

  FamilyTuple t{p.n, std::vector<Family>(bl.size(), Family(p.n))};
  for (SetMask x = 0; x < universe_size(p.n); ++x) {
    int in_x = -1;
    bool valid = true;
    for (std::size_t i = 0; i < bl.size() && valid; ++i) {
      const std::uint64_t rank = (x >> offset[i]) & local_mask[i];
      if (rank < p.segments[i]) {
        if (in_x >= 0) valid = false;
        in_x = static_cast<int>(i);
      }
    }
    if (valid && in_x >= 0) t.families[static_cast<std::size_t>(in_x)].insert(x);
  }
  return verified(std::move(t), "build_product_tuple");
}

// ---------------------------------------------------------------------------
// Sum construction

SumParams SumParams::with_offset(int n, int k, int a) {
  check_ground(n);
  require_k(k);
  if (((n - a) % 2) != 0)
    throw Error(ErrorCode::InfeasibleParams, "a=" + str(a) + " must have the parity of n=" + str(n));
  if (a > n) throw Error(ErrorCode::InfeasibleParams, "a=" + str(a) + " exceeds n=" + str(n) + " (l < 0)");
  SumParams p{n, k, a, (n - a) / 2};
  if (p.n - p.ell < k - 1)
    throw Error(ErrorCode::InfeasibleParams, "antichain {i} ∪ G needs n >= 2(k-1) - a; got n=" + str(n) +
                                                 ", k=" + str(k) + ", a=" + str(a));
  return p;
}

SumParams SumParams::automatic(int n, int k) {
  check_ground(n);
  require_k(k);
  return with_offset(n, k, sum_offset(n, k));
}

std::vector<SetMask> SumParams::antichain() const {
  const SetMask tail = ell > 0 ? range_mask(n - ell + 1, n) : 0;
  std::vector<SetMask> out;
  for (int i = 1; i <= k - 1; ++i) out.push_back(tail | (SetMask{1} << (i - 1)));
  return out;
}

FamilyTuple build_sum_tuple(const SumParams& p) {
  const auto sets = p.antichain();
  FamilyTuple t{p.n, {}};
  for (SetMask s : sets) {
    const SetMask one[] = {s};
    t.families.push_back(Family::from_masks(p.n, one));
  }
  Family rest = incomparable_complement(Family::from_masks(p.n, sets));
  if (rest.empty())
    throw Error(ErrorCode::InfeasibleParams, "no set is incomparable to the whole antichain");
  t.families.push_back(std::move(rest));
  return verified(std::move(t), "build_sum_tuple");
}

// ---------------------------------------------------------------------------
// Conjecture construction

ConjectureParams ConjectureParams::make(int n, int k, std::optional<int> ell) {
  check_ground(n);
  require_k(k);
  ConjectureParams p{n, k, ell.value_or(lstar(k))};
  if (p.ell < 1 || p.ell > n)
    throw Error(ErrorCode::BadGround, "l=" + str(p.ell) + " must satisfy 1 <= l <= n=" + str(n));
  BigInt central = 1;
  for (int i = 0; i < p.ell / 2; ++i) central = central * (p.ell - i) / (i + 1);
  if (central < k)
    throw Error(ErrorCode::AntichainTooSmall, "binom(" + str(p.ell) + "," + str(p.ell / 2) + ")=" +
                                                  central.str() + " < k=" + str(k));
  return p;
}

std::vector<SetMask> ConjectureParams::antichain() const {
  std::vector<SetMask> out;
  const int width = ell / 2;
  for (SetMask m = 0; m < (SetMask{1} << ell) && static_cast<int>(out.size()) < k; ++m)
    if (std::popcount(m) == width) out.push_back(m);
  return out;
}

FamilyTuple build_conjecture_tuple(const ConjectureParams& p) {
  const auto heads = p.antichain();
  const SetMask prefix = static_cast<SetMask>((std::uint64_t{1} << p.ell) - 1);
  FamilyTuple t{p.n, std::vector<Family>(heads.size(), Family(p.n))};
  for (SetMask x = 0; x < universe_size(p.n); ++x) {
    const SetMask head = x & prefix;
    for (std::size_t i = 0; i < heads.size(); ++i)
      if (heads[i] == head) t.families[i].insert(x);
  }
  return verified(std::move(t), "build_conjecture_tuple");
}

}  // namespace sperner
