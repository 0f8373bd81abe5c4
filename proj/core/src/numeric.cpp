#include "sperner/numeric.hpp"

#include <cstdio>

namespace sperner {

BigInt ipow(const BigInt& base, unsigned e) {
  BigInt result = 1;
  BigInt b = base;
  while (e) {
    if (e & 1u) result *= b;
    b *= b;
    e >>= 1;
  }
  return result;
}

Rational rpow(const Rational& base, unsigned e) {
  return Rational(ipow(numerator(base), e), ipow(denominator(base), e));
}

namespace {

std::optional<BigInt> exact_isqrt(const BigInt& x) {
  if (x < 0) return std::nullopt;
  BigInt r = boost::multiprecision::sqrt(x);
  if (r * r == x) return r;
  return std::nullopt;
}

}  // namespace

std::optional<Rational> exact_sqrt(const Rational& r) {
  if (r < 0) return std::nullopt;
  auto p = exact_isqrt(numerator(r));
  auto q = exact_isqrt(denominator(r));
  if (!p || !q) return std::nullopt;
  return Rational(*p, *q);
}

BigInt ceil_sqrt(const BigInt& x) {
  if (x <= 0) return 0;
  BigInt r = boost::multiprecision::sqrt(x);
  if (r * r < x) ++r;
  return r;
}

double to_double(const Rational& r) {
  return r.convert_to<double>();
}

std::string render(const BigInt& v) { return v.str(); }

std::string render(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

}  // namespace sperner
