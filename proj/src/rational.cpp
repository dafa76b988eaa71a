#include "rslat/rational.hpp"

#include <limits>

#include "rslat/error.hpp"

namespace rslat {

using boost::multiprecision::denominator;
using boost::multiprecision::numerator;

Rational make_rational(std::int64_t num, std::int64_t den) {
  require(den != 0, "rational with zero denominator");
  return Rational(BigInt(num), BigInt(den));
}

Rational pow(const Rational& base, unsigned exponent) {
  Rational result = 1;
  for (unsigned i = 0; i < exponent; ++i) result *= base;
  return result;
}

BigInt pow(const BigInt& base, unsigned exponent) {
  BigInt result = 1;
  for (unsigned i = 0; i < exponent; ++i) result *= base;
  return result;
}

BigInt floor(const Rational& value) {
  BigInt n = numerator(value);
  BigInt d = denominator(value);
  BigInt q = n / d;  // truncates toward zero
  if (n % d != 0 && n < 0) q -= 1;
  return q;
}

BigInt ceil(const Rational& value) { return -floor(-value); }

BigInt iroot_ceil(const BigInt& value, unsigned k) {
  require(k >= 1, "iroot_ceil: k must be positive");
  if (value <= 1) return value <= 0 ? BigInt(0) : BigInt(1);
  BigInt lo = 1, hi = 1;
  while (pow(hi, k) < value) hi *= 2;
  while (lo < hi) {
    BigInt mid = (lo + hi) / 2;
    if (pow(mid, k) >= value) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return lo;
}

BigInt binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  BigInt result = 1;
  for (unsigned i = 1; i <= k; ++i) {
    result *= (n - k + i);
    result /= i;
  }
  return result;
}

BigInt factorial(unsigned n) {
  BigInt result = 1;
  for (unsigned i = 2; i <= n; ++i) result *= i;
  return result;
}

std::int64_t to_int64(const BigInt& value) {
  if (value > std::numeric_limits<std::int64_t>::max() ||
      value < std::numeric_limits<std::int64_t>::min()) {
    throw InvalidArgument("integer does not fit in 64 bits: " + value.str());
  }
  return static_cast<std::int64_t>(value);
}

std::pair<std::int64_t, std::int64_t> to_int64_pair(const Rational& value) {
  return {to_int64(numerator(value)), to_int64(denominator(value))};
}

double to_double(const Rational& value) { return value.convert_to<double>(); }

std::string to_string(const Rational& value) {
  BigInt d = denominator(value);
  if (d == 1) return numerator(value).str();
  return numerator(value).str() + "/" + d.str();
}

}  // namespace rslat
