#pragma once

#include <optional>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace sperner {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt pow2(unsigned e) { return BigInt(1) << e; }

BigInt ipow(const BigInt& base, unsigned e);
Rational rpow(const Rational& base, unsigned e);

// Exact square root of a non-negative rational when it is a perfect square
// in lowest terms, otherwise nullopt.
std::optional<Rational> exact_sqrt(const Rational& r);

// ceil(sqrt(x)) for x >= 0.
BigInt ceil_sqrt(const BigInt& x);

double to_double(const Rational& r);

// "p" for integers, "p/q" otherwise.
std::string render(const Rational& r);
std::string render(const BigInt& v);

}  // namespace sperner
