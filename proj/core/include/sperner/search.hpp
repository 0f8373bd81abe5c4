#pragma once

// Exact and heuristic engines for pi(n,k) (max product of family sizes) and
// sigma(n,k) (max sum) over cross-Sperner k-tuples, exact comparability
// tables c(n,m), upset enumeration and a small independent oracle.

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "sperner/lattice.hpp"

namespace sperner {

enum class Measure { Product, Sum };
enum class SearchMode { Exact, Heuristic };

inline constexpr int kMaxExactGround = 5;
inline constexpr int kMaxExactLabels = 32;

struct SearchBudget {
  std::uint64_t max_nodes = 0;  // 0 = unlimited
  double max_seconds = 0.0;     // 0 = unlimited
};

struct SearchConfig {
  int n = 0;
  int k = 2;
  Measure measure = Measure::Product;
  SearchMode mode = SearchMode::Exact;
  SearchBudget budget;
  std::uint64_t seed = 1;
  int threads = 1;
  // Heuristic runs stop once a chain reaches this value.
  std::optional<BigInt> target;
};

struct SearchResult {
  BigInt value = 0;
  // Canonical ordering. Empty when no cross-Sperner k-tuple exists.
  FamilyTuple witness;
  bool found = false;
  // True only when an exact search ran to completion.
  bool optimal = false;
  bool budget_exhausted = false;
  bool target_met = false;
  std::uint64_t nodes = 0;
  double elapsed_seconds = 0.0;
};

// Label-assignment DFS with propagation, an admissible distribution bound
// and first-use symmetry breaking. Value and witness (the canonically least
// optimum) do not depend on the thread count. A hit budget returns the best
// tuple found so far with optimal = false.
SearchResult exact_search(const SearchConfig& cfg);
SearchResult exact_pi(SearchConfig cfg);
SearchResult exact_sigma(SearchConfig cfg);

// Simulated annealing over labelings, seeded from the product construction.
// One chain per thread, reproducible for fixed (seed, threads) unless the
// wall-clock budget cuts a chain short.
SearchResult heuristic_search(const SearchConfig& cfg);
SearchResult heuristic_pi(SearchConfig cfg);

// Reference lower bounds for small instances, used as default heuristic
// targets: pi(4,3) = 9, pi(5,3) >= 81, pi(6,3) >= 810, pi(5,4) >= 108.
std::optional<BigInt> reference_value(Measure measure, int n, int k);

struct CompRow {
  std::uint64_t m = 0;
  std::uint64_t c_exact = 0;
  std::uint64_t lower_bound = 0;  // ceil(2^{n/2+1} sqrt(m) - m)
  bool equality = false;
  Family witness;                 // convex, |witness| = m, c(witness) = c_exact
};

struct CompTable {
  int n = 0;
  std::vector<CompRow> rows;      // m = 1 .. 2^n
};

// min over (upset U, downset D) with |U ∩ D| >= m of |U| + |D| - |U ∩ D|.
// Throws GroundTooLarge for n > kMaxExactGround.
CompTable exact_comp_table(int n, int threads = 1);

// Every upset of P([n]) exactly once, as a 2^n-bit word (n <= 6 fits).
// Throws GroundTooLarge for n > kMaxExactGround.
void for_each_upset(int n, const std::function<void(std::uint64_t)>& visit);
std::vector<Family> enumerate_monotone(int n);
std::vector<std::uint64_t> upset_words(int n);

// Downset with the complemented members of an upset (bit-reversal duality).
std::uint64_t dual_word(int n, std::uint64_t upset);

// Exhaustive optimum over supports S ⊆ P([n]) and assignments of the
// comparability components of S to k non-empty groups. n <= 3.
std::uint64_t oracle_small(int n, int k, Measure measure);

}  // namespace sperner
