#pragma once

// Closed-form bounds on the product measure pi(n,k), the sum measure
// sigma(n,k) and the comparability number c(n,m).
//
// Formulas that are rational in powers of two are evaluated exactly. Terms
// with a square root stay exact when the radicand is a perfect rational
// square and otherwise fall back to double precision (relative error well
// under 1e-12 for the supported range). Only the e-based asymptotic lower
// bound is always floating point.

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sperner/error.hpp"
#include "sperner/numeric.hpp"

namespace sperner {

enum class BoundId {
  SeymourRhs,           // 2^{n/2}: sqrt|F| + sqrt|G| <= this for a pair
  ProdPairUpper,        // 2^{2n-4}
  SumPairUpper,         // 2^n - 2^{floor(n/2)} - 2^{ceil(n/2)} + 2
  PiLowerAsym,          // (2^n / (e k))^k, n large
  PiLowerConstructive,  // ((1/k - 2^{-floor(n/k)})(1 - 1/k)^{k-1})^k 2^{kn}
  PiUpper,              // (2^n/k^2)^k floor(k/2)^floor(k/2) ceil(k/2)^ceil(k/2)
  SigmaLower,           // 2^n - (3/sqrt2) sqrt(2^n k)(1 - 2^{-(k-1)})^{1/2} + 2(k-1)
  SigmaLowerPow2,       // 2^n - 2 sqrt(2^n k)(1 - 2^{-k}) + 2(k-1), k = 2^a
  SigmaUpper,           // 2^n - 2 sqrt(2^n (k-1)) + 2(k-1)
  CompLower,            // 2^{n/2+1} sqrt(m) - m
  AntichainComp,        // k 2^l + 2^{n-l}(1 - 2^{-(k-1)}) - (k-1)
  GerbnerConjUpper,     // 2^{k(n - l*(k))}, disproved
  ClosingConjAsym,      // ((k-1)^{k-1}/k^k 2^n)^k, conjectured asymptotic
};

inline constexpr std::array kAllBounds = {
    BoundId::SeymourRhs,       BoundId::ProdPairUpper,     BoundId::SumPairUpper,
    BoundId::PiLowerAsym,      BoundId::PiLowerConstructive, BoundId::PiUpper,
    BoundId::SigmaLower,       BoundId::SigmaLowerPow2,    BoundId::SigmaUpper,
    BoundId::CompLower,        BoundId::AntichainComp,     BoundId::GerbnerConjUpper,
    BoundId::ClosingConjAsym,
};

// Upper-case tag, e.g. "PI_UPPER".
std::string_view to_string(BoundId id);
// Throws Error(UnknownBound).
BoundId parse_bound_id(std::string_view tag);

struct BoundValue {
  std::optional<Rational> exact;
  double approx = 0.0;
  bool applicable = false;
  // Names the violated hypothesis when inapplicable; otherwise a short
  // remark (e.g. "conjecture").
  std::string note;

  std::string render() const;
};

struct BoundOptions {
  // l for ANTICHAIN_COMP.
  std::optional<int> ell;
  // SIGMA_LOWER without the (1 - 2^{-(k-1)})^{1/2} factor, under n >= 2k.
  bool sigma_theorem_form = false;
};

// Least l >= 1 with binom(l, floor(l/2)) >= k. Requires k >= 2.
int lstar(int k);

// k_or_m is m for COMP_LOWER and k otherwise. Out-of-hypothesis arguments
// give applicable = false rather than an error.
BoundValue eval_bound(BoundId id, int n, int k_or_m, const BoundOptions& opts = {});

// -1, 0, 1. Exact when both sides are exact, else relative tolerance 1e-12.
int compare(const BoundValue& a, const BoundValue& b);

// ceil(2^{n/2+1} sqrt(m) - m), computed without floating point.
BigInt comp_lower_ceil(int n, const BigInt& m);

// 2^{(n+3)/2} - 4 >= 2^{floor(n/2)} + 2^{ceil(n/2)} - 2, decided exactly.
bool sum_pair_gap_inequality(int n);

// 2^{-floor(n/k)} <= (e - (1 + 1/(k-1))^{k-1}) / (e k): the point from which
// the asymptotic product lower bound follows from the constructive one.
bool asym_threshold_holds(int n, int k);

// The integer a with a = n (mod 2) and -1 < a - a* <= 1, where
// a* = log2 k + log2(2^{k-1} / (2^{k-1} - 1)) maximizes the sum construction
// over real a. Decided with exact integer comparisons. Requires k >= 2.
int sum_offset(int n, int k);

struct BoundsReport {
  int n = 0;
  int k = 0;
  std::optional<int> m;
  std::map<BoundId, BoundValue> entries;
  // Labelled alternative forms, e.g. "SIGMA_LOWER/theorem".
  std::map<std::string, BoundValue> variants;

  // Descriptions of applicable lower bounds exceeding an applicable upper
  // bound on the same quantity; empty when consistent.
  std::vector<std::string> inconsistencies() const;
};

// Every BoundId evaluated at (n, k). COMP_LOWER uses m when given and is
// flagged otherwise; ANTICHAIN_COMP uses the l chosen by the sum
// construction when one exists.
BoundsReport bounds_report(int n, int k, std::optional<int> m = std::nullopt);

}  // namespace sperner
