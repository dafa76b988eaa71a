#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <utility>

namespace rslat {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

Rational make_rational(std::int64_t num, std::int64_t den = 1);
Rational pow(const Rational& base, unsigned exponent);
BigInt pow(const BigInt& base, unsigned exponent);
BigInt floor(const Rational& value);
BigInt ceil(const Rational& value);

// Exact integer k-th root rounded up: the least m >= 0 with m^k >= value.
BigInt iroot_ceil(const BigInt& value, unsigned k);

BigInt binomial(unsigned n, unsigned k);
BigInt factorial(unsigned n);

// Numerator/denominator as int64, throwing InvalidArgument on overflow.
std::pair<std::int64_t, std::int64_t> to_int64_pair(const Rational& value);
std::int64_t to_int64(const BigInt& value);
double to_double(const Rational& value);
std::string to_string(const Rational& value);

}  // namespace rslat
