#pragma once

// Bitset primitives over the power-set lattice P([n]).
//
// A subset of [n] is a SetMask with element i stored in bit i-1. A Family is
// a dense bitset of length 2^n indexed by SetMask, so closures, hulls and
// comparability sets are computed with word-parallel sweeps.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "sperner/error.hpp"
#include "sperner/numeric.hpp"

namespace sperner {

using SetMask = std::uint32_t;

inline constexpr int kMaxGround = 20;

enum class Direction { Up, Down };

// Throws BadGround unless 0 <= n <= kMaxGround.
void check_ground(int n);

inline std::size_t universe_size(int n) { return std::size_t{1} << n; }

// x is a subset of y or y is a subset of x.
constexpr bool comparable(SetMask x, SetMask y) noexcept {
  return (x & y) == x || (x & y) == y;
}

// 1-based sorted element list <-> mask.
SetMask mask_from_elements(std::span<const int> elements);
std::vector<int> elements_of(SetMask mask);

class Family {
 public:
  Family() : Family(0) {}
  explicit Family(int n);

  static Family from_masks(int n, std::span<const SetMask> masks);
  static Family full(int n);
  static Family from_words(int n, std::vector<std::uint64_t> words);

  int ground() const noexcept { return n_; }
  std::size_t size() const noexcept { return size_; }
  bool empty() const noexcept { return size_ == 0; }

  bool contains(SetMask x) const noexcept {
    return (words_[x >> 6] >> (x & 63)) & 1u;
  }
  void insert(SetMask x);
  void erase(SetMask x);

  // Members in ascending mask order.
  std::vector<SetMask> masks() const;
  std::optional<SetMask> min_member() const;
  std::optional<SetMask> max_member() const;

  std::span<const std::uint64_t> words() const noexcept { return words_; }

  bool is_subset_of(const Family& other) const;
  bool intersects(const Family& other) const;

  Family operator|(const Family& rhs) const;
  Family operator&(const Family& rhs) const;
  // Set difference.
  Family operator-(const Family& rhs) const;
  // Complement within P([n]).
  Family operator~() const;

  friend bool operator==(const Family& a, const Family& b) {
    return a.n_ == b.n_ && a.words_ == b.words_;
  }

  // Ascending member lists compared lexicographically.
  friend bool lex_less(const Family& a, const Family& b);

 private:
  void recount();

  int n_;
  std::vector<std::uint64_t> words_;
  std::size_t size_ = 0;
};

// An ordered k-tuple of families over the same ground set. Builders and
// searches only hand out tuples that pass is_cross_sperner; decoded input is
// unchecked until verified.
struct FamilyTuple {
  int n = 0;
  std::vector<Family> families;

  std::size_t k() const noexcept { return families.size(); }
};

struct Violation {
  std::size_t i;  // 0-based family indices, i < j
  std::size_t j;
  SetMask a;      // member of families[i]
  SetMask b;      // member of families[j], comparable to a
};

struct CrossSpernerCheck {
  bool ok = true;
  std::optional<Violation> violation;
};

bool is_antichain(const Family& f);

// Reports the lexicographically smallest (i, j, a, b) violation. Throws
// EmptyFamily if any family is empty.
CrossSpernerCheck is_cross_sperner(const FamilyTuple& t);

// Up-closure (all supersets of members) or down-closure. Throws EmptyFamily.
Family closure(const Family& f, Direction d);

// f together with every set sandwiched between two of its members.
Family convex_hull(const Family& f);

struct Comparability {
  std::size_t count;
  Family comparable;  // every set comparable to some member
};

Comparability comparability_number(const Family& f);

// All sets comparable to no member of f.
Family incomparable_complement(const Family& f);

bool is_upset(const Family& f);
bool is_downset(const Family& f);
bool is_convex(const Family& f);

// First t subsets of the sorted element list `elements` in colex order, as a
// family over P([n]). The colex rank of a subset is the value of its local
// bitmask, so every initial segment is a downset inside P(elements).
Family colex_initial_segment(int n, std::span<const int> elements, std::uint64_t t);

// (union of families 1..j, union of families j+1..k) for 1 <= j < k.
std::pair<Family, Family> merge_partition(const FamilyTuple& t, std::size_t j);

struct HarrisKleitman {
  Rational lhs;  // |U ∩ D| / 2^n
  Rational rhs;  // (|U| / 2^n)(|D| / 2^n)
  bool holds;
};

// Throws NotMonotone unless u is an upset and d a downset.
HarrisKleitman hk_check(const Family& u, const Family& d);

struct TupleMeasures {
  BigInt sum;
  BigInt product;
};

TupleMeasures measures(const FamilyTuple& t);

// Families sorted by smallest member; members are already ascending.
FamilyTuple canonicalize(const FamilyTuple& t);

// Lexicographic order on the canonical serialization.
bool canonical_less(const FamilyTuple& a, const FamilyTuple& b);

}  // namespace sperner
