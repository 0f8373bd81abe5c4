#include "sperner/bounds.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

#include "sperner/error.hpp"

namespace sperner {

namespace {

struct Tag {
  BoundId id;
  std::string_view name;
};

constexpr Tag kTags[] = {
    {BoundId::SeymourRhs, "SEYMOUR_RHS"},
    {BoundId::ProdPairUpper, "PROD_PAIR_UPPER"},
    {BoundId::SumPairUpper, "SUM_PAIR_UPPER"},
    {BoundId::PiLowerAsym, "PI_LOWER_ASYM"},
    {BoundId::PiLowerConstructive, "PI_LOWER_CONSTRUCTIVE"},
    {BoundId::PiUpper, "PI_UPPER"},
    {BoundId::SigmaLower, "SIGMA_LOWER"},
    {BoundId::SigmaLowerPow2, "SIGMA_LOWER_POW2"},
    {BoundId::SigmaUpper, "SIGMA_UPPER"},
    {BoundId::CompLower, "COMP_LOWER"},
    {BoundId::AntichainComp, "ANTICHAIN_COMP"},
    {BoundId::GerbnerConjUpper, "GERBNER_CONJ_UPPER"},
    {BoundId::ClosingConjAsym, "CLOSING_CONJ_ASYM"},
};

constexpr int kMaxBoundGround = 64;

BoundValue exact_value(Rational v, bool applicable, std::string note) {
  BoundValue out;
  out.approx = to_double(v);
  out.exact = std::move(v);
  out.applicable = applicable;
  out.note = std::move(note);
  return out;
}

BoundValue float_value(double v, bool applicable, std::string note) {
  BoundValue out;
  out.approx = v;
  out.applicable = applicable;
  out.note = std::move(note);
  return out;
}

BoundValue inapplicable(std::string note) { return float_value(std::nan(""), false, std::move(note)); }

// 2^e for a possibly negative exponent.
Rational pow2r(int e) {
  if (e >= 0) return Rational(pow2(static_cast<unsigned>(e)));
  return Rational(BigInt(1), pow2(static_cast<unsigned>(-e)));
}

// base - coeff * sqrt(radicand), exact when the radicand is a rational square.
BoundValue minus_coeff_sqrt(const Rational& base, const Rational& coeff, const Rational& radicand,
                            bool applicable, std::string note) {
  if (auto root = exact_sqrt(radicand)) return exact_value(base - coeff * *root, applicable, std::move(note));
  const long double r = static_cast<long double>(to_double(radicand));
  const long double v = static_cast<long double>(to_double(base)) -
                        static_cast<long double>(to_double(coeff)) * std::sqrt(r);
  return float_value(static_cast<double>(v), applicable, std::move(note));
}

bool is_power_of_two(int k) { return k > 0 && (k & (k - 1)) == 0; }

int log2_exact(int k) {
  int a = 0;
  while ((1 << a) < k) ++a;
  return a;
}

// n > k log2 k + k, i.e. 2^{n-k} > k^k.
bool constructive_hypothesis(int n, int k) {
  if (n < k) return false;
  return pow2(static_cast<unsigned>(n - k)) > ipow(BigInt(k), static_cast<unsigned>(k));
}

// n >= 2k - 1 - log2 k, i.e. k 2^n >= 2^{2k-1}.
bool sum_lemma_hypothesis(int n, int k) {
  return BigInt(k) * pow2(static_cast<unsigned>(n)) >= pow2(static_cast<unsigned>(2 * k - 1));
}

// 2^n >= (k-1)(1 + sqrt(k-1))^2 = k(k-1) + 2(k-1)^{3/2}.
bool sum_upper_hypothesis(int n, int k) {
  const BigInt slack = pow2(static_cast<unsigned>(n)) - BigInt(k) * (k - 1);
  if (slack < 0) return false;
  return slack * slack >= 4 * ipow(BigInt(k - 1), 3);
}

std::string ks(int v) { return std::to_string(v); }

BoundValue eval_k_bound(BoundId id, int n, int k, const BoundOptions& opts) {
  const Rational two_n = pow2r(n);
  switch (id) {
    case BoundId::SeymourRhs: {
      const bool ok = k == 2;
      return minus_coeff_sqrt(0, -1, two_n, ok, ok ? "" : "pair bound: requires k = 2");
    }
    case BoundId::ProdPairUpper: {
      const bool ok = k == 2;
      return exact_value(pow2r(2 * n - 4), ok, ok ? "" : "pair bound: requires k = 2");
    }
    case BoundId::SumPairUpper: {
      const bool ok = k == 2;
      Rational v = two_n - pow2r(n / 2) - pow2r((n + 1) / 2) + 2;
      return exact_value(std::move(v), ok, ok ? "" : "pair bound: requires k = 2");
    }
    case BoundId::PiLowerAsym: {
      const long double base = std::ldexp(1.0L, n) / (std::numbers::e_v<long double> * k);
      const double v = static_cast<double>(std::pow(base, static_cast<long double>(k)));
      if (!constructive_hypothesis(n, k))
        return float_value(v, false, "requires n > k log2 k + k");
      if (!asym_threshold_holds(n, k))
        return float_value(v, false,
                           "requires 2^{-floor(n/k)} <= (e - (1+1/(k-1))^{k-1})/(e k) (n sufficiently large)");
      return float_value(v, true, "");
    }
    case BoundId::PiLowerConstructive: {
      Rational lambda(BigInt(1), BigInt(k));
      if (!is_power_of_two(k)) lambda -= pow2r(-(n / k));
      const Rational factor = lambda * rpow(Rational(k - 1, k), static_cast<unsigned>(k - 1));
      Rational v = rpow(factor, static_cast<unsigned>(k)) * pow2r(k * n);
      const bool ok = constructive_hypothesis(n, k);
      return exact_value(std::move(v), ok, ok ? "" : "requires n > k log2 k + k");
    }
    case BoundId::PiUpper: {
      const int a = k / 2, b = k - k / 2;
      Rational v = rpow(two_n / (k * k), static_cast<unsigned>(k)) *
                   ipow(BigInt(a), static_cast<unsigned>(a)) * ipow(BigInt(b), static_cast<unsigned>(b));
      return exact_value(std::move(v), true, "");
    }
    case BoundId::SigmaLower: {
      const Rational tail = 2 * (k - 1);
      if (opts.sigma_theorem_form) {
        // 2^n - (3/sqrt2) sqrt(2^n k) + 2(k-1) = 2^n - 3 sqrt(2^{n-1} k) + 2(k-1)
        const bool ok = n >= 2 * k;
        return minus_coeff_sqrt(two_n + tail, 3, pow2r(n - 1) * k, ok, ok ? "theorem form" : "requires n >= 2k");
      }
      const Rational radicand = pow2r(n - 1) * k * (Rational(1) - pow2r(1 - k));
      const bool ok = sum_lemma_hypothesis(n, k);
      return minus_coeff_sqrt(two_n + tail, 3, radicand, ok, ok ? "" : "requires n >= 2k - 1 - log2 k");
    }
    case BoundId::SigmaLowerPow2: {
      const Rational tail = 2 * (k - 1);
      const Rational coeff = 2 * (Rational(1) - pow2r(-k));
      std::string why;
      if (!is_power_of_two(k)) {
        why = "requires k a power of two";
      } else {
        const int a = log2_exact(k);
        if ((n - a) % 2 != 0)
          why = "requires n - log2 k even";
        else if (n < 2 * (k - 1) - a)
          why = "requires n >= 2(k-1) - log2 k";
      }
      return minus_coeff_sqrt(two_n + tail, coeff, two_n * k, why.empty(), why);
    }
    case BoundId::SigmaUpper: {
      const bool ok = sum_upper_hypothesis(n, k);
      return minus_coeff_sqrt(two_n + 2 * (k - 1), 2, two_n * (k - 1), ok,
                              ok ? "" : "requires 2^n >= (k-1)(1 + sqrt(k-1))^2");
    }
    case BoundId::AntichainComp: {
      if (!opts.ell) return inapplicable("requires l (antichain tail length)");
      const int ell = *opts.ell;
      if (ell < 0 || ell > n) return inapplicable("requires 0 <= l <= n");
      Rational v = Rational(k) * pow2r(ell) + pow2r(n - ell) * (Rational(1) - pow2r(1 - k)) - (k - 1);
      const bool ok = k - 1 <= n - ell;
      return exact_value(std::move(v), ok, ok ? "" : "requires k - 1 <= n - l");
    }
    case BoundId::GerbnerConjUpper: {
      const int ls = lstar(k);
      const bool ok = n >= ls;
      return exact_value(pow2r(k * (n - ls)), ok, ok ? "conjecture (disproved)" : "requires n >= l*(k)");
    }
    case BoundId::ClosingConjAsym: {
      const Rational base = Rational(ipow(BigInt(k - 1), static_cast<unsigned>(k - 1)),
                                     ipow(BigInt(k), static_cast<unsigned>(k))) *
                            two_n;
      return exact_value(rpow(base, static_cast<unsigned>(k)), true,
                         "conjectured asymptotic value; (1+o(1)) factor omitted");
    }
    case BoundId::CompLower:
      break;
  }
  throw Error(ErrorCode::UnknownBound, "unhandled bound id");
}

}  // namespace

std::string_view to_string(BoundId id) {
  for (const auto& t : kTags)
    if (t.id == id) return t.name;
  return "UNKNOWN";
}

BoundId parse_bound_id(std::string_view tag) {
  for (const auto& t : kTags)
    if (t.name == tag) return t.id;
  throw Error(ErrorCode::UnknownBound, "unknown bound id '" + std::string(tag) + "'");
}

std::string BoundValue::render() const {
  if (exact) return sperner::render(*exact);
  if (std::isnan(approx)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", approx);
  return buf;
}

int lstar(int k) {
  if (k < 2) throw Error(ErrorCode::BadConfig, "l* requires k >= 2");
  for (int ell = 1;; ++ell) {
    BigInt c = 1;
    for (int i = 0; i < ell / 2; ++i) c = c * (ell - i) / (i + 1);
    if (c >= k) return ell;
  }
}

BoundValue eval_bound(BoundId id, int n, int k_or_m, const BoundOptions& opts) {
  if (n < 0 || n > kMaxBoundGround)
    return inapplicable("requires 0 <= n <= " + ks(kMaxBoundGround));
  if (id == BoundId::CompLower) {
    const int m = k_or_m;
    if (m < 1) return inapplicable("requires 1 <= m <= 2^n");
    const Rational two_n = pow2r(n);
    const bool ok = Rational(m) <= two_n;
    // 2 sqrt(2^n m) - m
    return minus_coeff_sqrt(-m, -2, two_n * m, ok, ok ? "" : "requires 1 <= m <= 2^n");
  }
  if (k_or_m < 2) return inapplicable("requires k >= 2");
  return eval_k_bound(id, n, k_or_m, opts);
}

int compare(const BoundValue& a, const BoundValue& b) {
  if (a.exact && b.exact) return *a.exact < *b.exact ? -1 : (*b.exact < *a.exact ? 1 : 0);
  const double x = a.exact ? to_double(*a.exact) : a.approx;
  const double y = b.exact ? to_double(*b.exact) : b.approx;
  const double scale = std::max(std::fabs(x), std::fabs(y));
  if (std::fabs(x - y) <= 1e-12 * scale) return 0;
  return x < y ? -1 : 1;
}

BigInt comp_lower_ceil(int n, const BigInt& m) {
  // 2 sqrt(2^n m) = sqrt(2^{n+2} m)
  return ceil_sqrt(pow2(static_cast<unsigned>(n + 2)) * m) - m;
}

bool sum_pair_gap_inequality(int n) {
  const BigInt rhs = pow2(static_cast<unsigned>(n / 2)) + pow2(static_cast<unsigned>((n + 1) / 2)) - 2;
  // 2^{(n+3)/2} >= rhs + 4  <=>  2^{n+3} >= (rhs + 4)^2
  const BigInt shifted = rhs + 4;
  return pow2(static_cast<unsigned>(n + 3)) >= shifted * shifted;
}

bool asym_threshold_holds(int n, int k) {
  if (k < 2) return false;
  const long double e = std::numbers::e_v<long double>;
  const long double growth = std::pow(1.0L + 1.0L / (k - 1), static_cast<long double>(k - 1));
  const long double rhs = (e - growth) / (e * k);
  return std::ldexp(1.0L, -(n / k)) <= rhs;
}

int sum_offset(int n, int k) {
  if (k < 2) throw Error(ErrorCode::BadConfig, "sum offset requires k >= 2");
  // a - a* <= 1  <=>  2^{a-1} (2^{k-1} - 1) <= k 2^{k-1}
  // a - a* > -1  <=>  2^{a+1} (2^{k-1} - 1) >  k 2^{k-1}
  const Rational d = pow2r(k - 1) - 1;
  const Rational target = Rational(k) * pow2r(k - 1);
  for (int a = (n % 2 == 0) ? 0 : 1;; a += 2) {
    if (pow2r(a - 1) * d <= target && pow2r(a + 1) * d > target) return a;
  }
}

std::vector<std::string> BoundsReport::inconsistencies() const {
  std::vector<std::string> out;
  auto check = [&](BoundId lo, BoundId hi) {
    auto l = entries.find(lo), h = entries.find(hi);
    if (l == entries.end() || h == entries.end()) return;
    if (!l->second.applicable || !h->second.applicable) return;
    if (compare(l->second, h->second) > 0)
      out.push_back(std::string(to_string(lo)) + " = " + l->second.render() + " exceeds " +
                    std::string(to_string(hi)) + " = " + h->second.render());
  };
  for (auto lo : {BoundId::PiLowerAsym, BoundId::PiLowerConstructive}) {
    check(lo, BoundId::PiUpper);
    check(lo, BoundId::ProdPairUpper);
  }
  for (auto lo : {BoundId::SigmaLower, BoundId::SigmaLowerPow2}) {
    check(lo, BoundId::SigmaUpper);
    check(lo, BoundId::SumPairUpper);
  }
  for (const auto& [name, v] : variants) {
    if (name.rfind("SIGMA_LOWER", 0) != 0 || !v.applicable) continue;
    for (auto hi : {BoundId::SigmaUpper, BoundId::SumPairUpper}) {
      auto h = entries.find(hi);
      if (h != entries.end() && h->second.applicable && compare(v, h->second) > 0)
        out.push_back(name + " = " + v.render() + " exceeds " + std::string(to_string(hi)) + " = " +
                      h->second.render());
    }
  }
  return out;
}

BoundsReport bounds_report(int n, int k, std::optional<int> m) {
  BoundsReport r;
  r.n = n;
  r.k = k;
  r.m = m;
  BoundOptions opts;
  if (k >= 2) {
    const int a = sum_offset(n, k);
    if (n >= a) opts.ell = (n - a) / 2;
  }
  for (BoundId id : kAllBounds) {
    if (id == BoundId::CompLower) {
      r.entries[id] = m ? eval_bound(id, n, *m) : inapplicable("requires m");
    } else {
      r.entries[id] = eval_bound(id, n, k, opts);
    }
  }
  BoundOptions theorem = opts;
  theorem.sigma_theorem_form = true;
  r.variants["SIGMA_LOWER/theorem"] = eval_bound(BoundId::SigmaLower, n, k, theorem);
  return r;
}

}  // namespace sperner
