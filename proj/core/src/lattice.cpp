#include "sperner/lattice.hpp"

#include <algorithm>
#include <bit>
#include <string>

namespace sperner {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::BadGround: return "BadGround";
    case ErrorCode::EmptyFamily: return "EmptyFamily";
    case ErrorCode::BadSegmentSize: return "BadSegmentSize";
    case ErrorCode::BadIndex: return "BadIndex";
    case ErrorCode::NotMonotone: return "NotMonotone";
    case ErrorCode::UnknownBound: return "UnknownBound";
    case ErrorCode::EmptyBlock: return "EmptyBlock";
    case ErrorCode::InfeasibleParams: return "InfeasibleParams";
    case ErrorCode::AntichainTooSmall: return "AntichainTooSmall";
    case ErrorCode::GroundTooLarge: return "GroundTooLarge";
    case ErrorCode::BadConfig: return "BadConfig";
  }
  return "Unknown";
}

namespace {

using Words = std::vector<std::uint64_t>;

// Positions whose bit b is clear, for b < 6.
constexpr std::uint64_t kClearBit[6] = {
    0x5555555555555555ull, 0x3333333333333333ull, 0x0F0F0F0F0F0F0F0Full,
    0x00FF00FF00FF00FFull, 0x0000FFFF0000FFFFull, 0x00000000FFFFFFFFull,
};

std::size_t word_count(int n) { return n <= 6 ? 1 : std::size_t{1} << (n - 6); }

std::uint64_t tail_mask(int n) {
  return n >= 6 ? ~0ull : (std::uint64_t{1} << (1u << n)) - 1;
}

void sweep_up(Words& w, int n) {
  for (int b = 0; b < n; ++b) {
    if (b < 6) {
      const unsigned s = 1u << b;
      for (auto& x : w) x |= (x & kClearBit[b]) << s;
    } else {
      const std::size_t stride = std::size_t{1} << (b - 6);
      for (std::size_t i = 0; i < w.size(); ++i)
        if (i & stride) w[i] |= w[i ^ stride];
    }
  }
}

void sweep_down(Words& w, int n) {
  for (int b = 0; b < n; ++b) {
    if (b < 6) {
      const unsigned s = 1u << b;
      for (auto& x : w) x |= (x >> s) & kClearBit[b];
    } else {
      const std::size_t stride = std::size_t{1} << (b - 6);
      for (std::size_t i = 0; i < w.size(); ++i)
        if (!(i & stride)) w[i] |= w[i | stride];
    }
  }
}

// Sets obtained from a member by adding exactly one element.
Words one_step_up(const Words& w, int n) {
  Words out(w.size(), 0);
  for (int b = 0; b < n; ++b) {
    if (b < 6) {
      const unsigned s = 1u << b;
      for (std::size_t i = 0; i < w.size(); ++i) out[i] |= (w[i] & kClearBit[b]) << s;
    } else {
      const std::size_t stride = std::size_t{1} << (b - 6);
      for (std::size_t i = 0; i < w.size(); ++i)
        if (i & stride) out[i] |= w[i ^ stride];
    }
  }
  return out;
}

void require_nonempty(const Family& f, const char* what) {
  if (f.empty()) throw Error(ErrorCode::EmptyFamily, std::string(what) + ": family must be non-empty");
}

Family up_of(const Family& f) {
  Words w(f.words().begin(), f.words().end());
  sweep_up(w, f.ground());
  return Family::from_words(f.ground(), std::move(w));
}

Family down_of(const Family& f) {
  Words w(f.words().begin(), f.words().end());
  sweep_down(w, f.ground());
  return Family::from_words(f.ground(), std::move(w));
}

Family comparable_of(const Family& f) { return up_of(f) | down_of(f); }

void require_same_ground(const Family& a, const Family& b) {
  if (a.ground() != b.ground())
    throw Error(ErrorCode::BadGround, "families live over different ground sets");
}

}  // namespace

void check_ground(int n) {
  if (n < 0 || n > kMaxGround)
    throw Error(ErrorCode::BadGround,
                "ground size n=" + std::to_string(n) + " outside 0.." + std::to_string(kMaxGround));
}

SetMask mask_from_elements(std::span<const int> elements) {
  SetMask m = 0;
  for (int e : elements) {
    if (e < 1 || e > kMaxGround)
      throw Error(ErrorCode::BadGround, "element " + std::to_string(e) + " outside 1.." +
                                            std::to_string(kMaxGround));
    m |= SetMask{1} << (e - 1);
  }
  return m;
}

std::vector<int> elements_of(SetMask mask) {
  std::vector<int> out;
  for (int i = 0; mask; ++i, mask >>= 1)
    if (mask & 1u) out.push_back(i + 1);
  return out;
}

// ---------------------------------------------------------------------------
// Family

Family::Family(int n) : n_(n) {
  check_ground(n);
  words_.assign(word_count(n), 0);
}

Family Family::from_masks(int n, std::span<const SetMask> masks) {
  Family f(n);
  for (SetMask m : masks) f.insert(m);
  return f;
}

Family Family::full(int n) {
  Family f(n);
  std::fill(f.words_.begin(), f.words_.end(), ~0ull);
  f.words_.back() &= tail_mask(n);
  f.recount();
  return f;
}

Family Family::from_words(int n, std::vector<std::uint64_t> words) {
  Family f(n);
  if (words.size() != f.words_.size())
    throw Error(ErrorCode::BadGround, "word vector length does not match 2^n");
  f.words_ = std::move(words);
  f.words_.back() &= tail_mask(n);
  f.recount();
  return f;
}

void Family::insert(SetMask x) {
  if (x >= universe_size(n_))
    throw Error(ErrorCode::BadGround,
                "mask " + std::to_string(x) + " is not a subset of [" + std::to_string(n_) + "]");
  auto& w = words_[x >> 6];
  const std::uint64_t bit = std::uint64_t{1} << (x & 63);
  if (!(w & bit)) {
    w |= bit;
    ++size_;
  }
}

void Family::erase(SetMask x) {
  if (x >= universe_size(n_)) return;
  auto& w = words_[x >> 6];
  const std::uint64_t bit = std::uint64_t{1} << (x & 63);
  if (w & bit) {
    w &= ~bit;
    --size_;
  }
}

std::vector<SetMask> Family::masks() const {
  std::vector<SetMask> out;
  out.reserve(size_);
  for (std::size_t i = 0; i < words_.size(); ++i) {
    for (std::uint64_t w = words_[i]; w; w &= w - 1)
      out.push_back(static_cast<SetMask>((i << 6) + std::countr_zero(w)));
  }
  return out;
}

std::optional<SetMask> Family::min_member() const {
  for (std::size_t i = 0; i < words_.size(); ++i)
    if (words_[i]) return static_cast<SetMask>((i << 6) + std::countr_zero(words_[i]));
  return std::nullopt;
}

std::optional<SetMask> Family::max_member() const {
  for (std::size_t i = words_.size(); i-- > 0;)
    if (words_[i]) return static_cast<SetMask>((i << 6) + 63 - std::countl_zero(words_[i]));
  return std::nullopt;
}

bool Family::is_subset_of(const Family& other) const {
  require_same_ground(*this, other);
  for (std::size_t i = 0; i < words_.size(); ++i)
    if (words_[i] & ~other.words_[i]) return false;
  return true;
}

bool Family::intersects(const Family& other) const {
  require_same_ground(*this, other);
  for (std::size_t i = 0; i < words_.size(); ++i)
    if (words_[i] & other.words_[i]) return true;
  return false;
}

Family Family::operator|(const Family& rhs) const {
  require_same_ground(*this, rhs);
  Words w(words_);
  for (std::size_t i = 0; i < w.size(); ++i) w[i] |= rhs.words_[i];
  return from_words(n_, std::move(w));
}

Family Family::operator&(const Family& rhs) const {
  require_same_ground(*this, rhs);
  Words w(words_);
  for (std::size_t i = 0; i < w.size(); ++i) w[i] &= rhs.words_[i];
  return from_words(n_, std::move(w));
}

Family Family::operator-(const Family& rhs) const {
  require_same_ground(*this, rhs);
  Words w(words_);
  for (std::size_t i = 0; i < w.size(); ++i) w[i] &= ~rhs.words_[i];
  return from_words(n_, std::move(w));
}

Family Family::operator~() const {
  Words w(words_);
  for (auto& x : w) x = ~x;
  return from_words(n_, std::move(w));
}

void Family::recount() {
  size_ = 0;
  for (auto w : words_) size_ += static_cast<std::size_t>(std::popcount(w));
}

bool lex_less(const Family& a, const Family& b) {
  const std::size_t len = std::min(a.words_.size(), b.words_.size());
  for (std::size_t i = 0; i < len; ++i) {
    const std::uint64_t diff = a.words_[i] ^ b.words_[i];
    if (!diff) continue;
    const int bit = std::countr_zero(diff);
    const bool a_has = (a.words_[i] >> bit) & 1u;
    const Family& other = a_has ? b : a;
    // The side holding the first differing member is smaller unless the
    // other side has no members past that point (it is then a prefix).
    bool other_has_more = (bit < 63) && (other.words_[i] >> (bit + 1)) != 0;
    for (std::size_t j = i + 1; !other_has_more && j < other.words_.size(); ++j)
      other_has_more = other.words_[j] != 0;
    return a_has ? other_has_more : !other_has_more;
  }
  return a.size_ < b.size_;
}

// ---------------------------------------------------------------------------
// Predicates and closures

bool is_antichain(const Family& f) {
  Words w(f.words().begin(), f.words().end());
  Words strict = one_step_up(w, f.ground());
  sweep_up(strict, f.ground());
  for (std::size_t i = 0; i < w.size(); ++i)
    if (strict[i] & w[i]) return false;
  return true;
}

CrossSpernerCheck is_cross_sperner(const FamilyTuple& t) {
  for (std::size_t i = 0; i < t.families.size(); ++i) {
    if (t.families[i].ground() != t.n)
      throw Error(ErrorCode::BadGround, "family " + std::to_string(i + 1) + " has the wrong ground size");
    if (t.families[i].empty())
      throw Error(ErrorCode::EmptyFamily, "families must be non-empty (family " +
                                              std::to_string(i + 1) + " is empty)");
  }
  CrossSpernerCheck out;
  std::vector<Family> reach;
  reach.reserve(t.families.size());
  for (const auto& f : t.families) reach.push_back(comparable_of(f));

  for (std::size_t i = 0; i < t.families.size(); ++i) {
    for (std::size_t j = i + 1; j < t.families.size(); ++j) {
      if (!reach[j].intersects(t.families[i])) continue;
      const SetMask a = *(reach[j] & t.families[i]).min_member();
      const SetMask single[] = {a};
      const Family near = comparable_of(Family::from_masks(t.n, single));
      const SetMask b = *(near & t.families[j]).min_member();
      out.ok = false;
      out.violation = Violation{i, j, a, b};
      return out;
    }
  }
  return out;
}

Family closure(const Family& f, Direction d) {
  require_nonempty(f, "closure");
  return d == Direction::Up ? up_of(f) : down_of(f);
}

Family convex_hull(const Family& f) {
  require_nonempty(f, "convex_hull");
  return up_of(f) & down_of(f);
}

Comparability comparability_number(const Family& f) {
  require_nonempty(f, "comparability_number");
  Family c = comparable_of(f);
  const std::size_t count = c.size();
  return {count, std::move(c)};
}

Family incomparable_complement(const Family& f) {
  require_nonempty(f, "incomparable_complement");
  return ~comparable_of(f);
}

bool is_upset(const Family& f) { return up_of(f) == f; }
bool is_downset(const Family& f) { return down_of(f) == f; }

bool is_convex(const Family& f) {
  if (f.empty()) return true;
  return (up_of(f) & down_of(f)) == f;
}

Family colex_initial_segment(int n, std::span<const int> elements, std::uint64_t t) {
  check_ground(n);
  for (std::size_t i = 0; i < elements.size(); ++i) {
    if (elements[i] < 1 || elements[i] > n)
      throw Error(ErrorCode::BadGround, "segment element " + std::to_string(elements[i]) +
                                            " outside [" + std::to_string(n) + "]");
    if (i > 0 && elements[i] <= elements[i - 1])
      throw Error(ErrorCode::BadGround, "segment elements must be strictly increasing");
  }
  const std::uint64_t total = std::uint64_t{1} << elements.size();
  if (t < 1 || t > total)
    throw Error(ErrorCode::BadSegmentSize, "segment size " + std::to_string(t) + " outside 1.." +
                                               std::to_string(total));
  Family out(n);
  for (std::uint64_t rank = 0; rank < t; ++rank) {
    SetMask m = 0;
    for (std::size_t b = 0; b < elements.size(); ++b)
      if ((rank >> b) & 1u) m |= SetMask{1} << (elements[b] - 1);
    out.insert(m);
  }
  return out;
}

std::pair<Family, Family> merge_partition(const FamilyTuple& t, std::size_t j) {
  if (j < 1 || j >= t.k())
    throw Error(ErrorCode::BadIndex, "merge index j=" + std::to_string(j) + " must satisfy 1 <= j < k=" +
                                         std::to_string(t.k()));
  Family left(t.n), right(t.n);
  for (std::size_t i = 0; i < t.k(); ++i) {
    if (i < j)
      left = left | t.families[i];
    else
      right = right | t.families[i];
  }
  return {std::move(left), std::move(right)};
}

HarrisKleitman hk_check(const Family& u, const Family& d) {
  require_same_ground(u, d);
  if (!is_upset(u)) throw Error(ErrorCode::NotMonotone, "first argument is not an upset");
  if (!is_downset(d)) throw Error(ErrorCode::NotMonotone, "second argument is not a downset");
  const BigInt total = pow2(static_cast<unsigned>(u.ground()));
  const BigInt both = (u & d).size();
  const BigInt nu = u.size();
  const BigInt nd = d.size();
  HarrisKleitman out{Rational(both, total), Rational(nu * nd, total * total), both * total <= nu * nd};
  return out;
}

TupleMeasures measures(const FamilyTuple& t) {
  TupleMeasures m{0, t.families.empty() ? BigInt(0) : BigInt(1)};
  for (const auto& f : t.families) {
    m.sum += f.size();
    m.product *= f.size();
  }
  return m;
}

FamilyTuple canonicalize(const FamilyTuple& t) {
  FamilyTuple out = t;
  std::stable_sort(out.families.begin(), out.families.end(), [](const Family& a, const Family& b) {
    auto ma = a.min_member(), mb = b.min_member();
    if (!ma || !mb) return ma.has_value() && !mb.has_value();
    return *ma < *mb;
  });
  return out;
}

bool canonical_less(const FamilyTuple& a, const FamilyTuple& b) {
  const std::size_t len = std::min(a.k(), b.k());
  for (std::size_t i = 0; i < len; ++i) {
    if (lex_less(a.families[i], b.families[i])) return true;
    if (lex_less(b.families[i], a.families[i])) return false;
  }
  return a.k() < b.k();
}

}  // namespace sperner
