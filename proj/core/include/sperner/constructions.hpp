#pragma once

// Deterministic builders for explicit cross-Sperner families. Every builder
// verifies its output with is_cross_sperner before returning it.

#include <cstdint>
#include <optional>
#include <vector>

#include "sperner/lattice.hpp"

namespace sperner {

// F = {F : 1 in F, n not in F}, G = {G : 1 not in G, n in G}. Requires n >= 2.
FamilyTuple build_pair_product(int n);

// F = {[floor(n/2)]}, G = every set incomparable to it. Requires n >= 2.
FamilyTuple build_pair_sum(int n);

// Product construction: [n] is cut into k contiguous blocks A_1..A_k (larger
// blocks first). Block i contributes X_i, the first t_i subsets of A_i in
// colex order, and Y_i = P(A_i) \ X_i. Family i takes every F with
// F ∩ A_i in X_i and F ∩ A_j in Y_j for all j != i.
struct ProductParams {
  int n = 0;
  int k = 0;
  std::vector<std::uint64_t> segments;  // t_i

  // t_i = max(1, floor(2^{|A_i|} / k)).
  static ProductParams defaults(int n, int k);

  // Sorted 1-based elements of each block.
  std::vector<std::vector<int>> blocks() const;

  // t_i * prod_{j != i} (2^{|A_j|} - t_j).
  std::vector<std::uint64_t> predicted_sizes() const;
};

std::vector<std::vector<int>> contiguous_blocks(int n, int k);

// Throws BadSegmentSize for t_i outside 1..2^{|A_i|}, EmptyBlock when some
// Y_i would be empty.
FamilyTuple build_product_tuple(const ProductParams& p);

// Sum construction: k-1 singleton families {F_i} with F_i = {i} ∪ G, where G
// is the last l elements of [n], plus every set incomparable to all F_i.
struct SumParams {
  int n = 0;
  int k = 0;
  int a = 0;
  int ell = 0;  // (n - a) / 2

  // a from sum_offset(n, k). Throws InfeasibleParams when the resulting
  // antichain does not fit in [n].
  static SumParams automatic(int n, int k);
  // Caller-chosen a; only parity and fit are checked.
  static SumParams with_offset(int n, int k, int a);

  std::vector<SetMask> antichain() const;
};

FamilyTuple build_sum_tuple(const SumParams& p);

// Family i = {F : F ∩ [l] = A_i} for the first k sets A_i of size
// floor(l/2) in colex order inside P([l]).
struct ConjectureParams {
  int n = 0;
  int k = 0;
  int ell = 0;

  // l defaults to lstar(k). Throws AntichainTooSmall or BadGround.
  static ConjectureParams make(int n, int k, std::optional<int> ell = std::nullopt);

  std::vector<SetMask> antichain() const;
};

FamilyTuple build_conjecture_tuple(const ConjectureParams& p);

}  // namespace sperner
