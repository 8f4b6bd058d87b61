#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <string>
#include <tuple>
#include <vector>

#include "toricsplit/error.hpp"

namespace toricsplit {

using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

inline Integer numerator(const Rational& r) { return boost::multiprecision::numerator(r); }
inline Integer denominator(const Rational& r) { return boost::multiprecision::denominator(r); }

inline bool is_integer(const Rational& r) { return denominator(r) == 1; }

inline Integer to_integer(const Rational& r, const char* context) {
  require(is_integer(r), ErrorKind::Internal,
          std::string("non-integral value in ") + context);
  return numerator(r);
}

namespace detail {

inline std::int64_t gcd64(std::int64_t a, std::int64_t b) {
  a = a < 0 ? -a : a;
  b = b < 0 ? -b : b;
  while (b != 0) {
    const std::int64_t t = a % b;
    a = b;
    b = t;
  }
  return a;
}

}  // namespace detail

inline Integer abs(const Integer& a) { return a < 0 ? Integer(-a) : a; }
inline Rational abs(const Rational& a) { return a < 0 ? Rational(-a) : a; }

inline Integer gcd(const Integer& a, const Integer& b) {
  return boost::multiprecision::gcd(a, b);
}

inline Integer lcm(const Integer& a, const Integer& b) {
  if (a == 0 || b == 0) return 0;
  return abs(a / gcd(a, b) * b);
}

/// Floor division for any sign combination; b != 0.
inline Integer floor_div(const Integer& a, const Integer& b) {
  Integer q = a / b;
  Integer r = a - q * b;
  if (r != 0 && ((r < 0) != (b < 0))) q -= 1;
  return q;
}

/// Extended gcd: returns (g, s, t) with s*a + t*b = g >= 0.
inline std::tuple<Integer, Integer, Integer> extended_gcd(const Integer& a, const Integer& b) {
  Integer old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    Integer q = floor_div(old_r, r);
    Integer tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
    tmp = old_t - q * t;
    old_t = t;
    t = tmp;
  }
  if (old_r < 0) {
    old_r = -old_r;
    old_s = -old_s;
    old_t = -old_t;
  }
  return {old_r, old_s, old_t};
}

inline Integer pow(const Integer& base, unsigned exp) {
  return boost::multiprecision::pow(base, exp);
}

inline Rational pow(const Rational& base, unsigned exp) {
  Rational out = 1;
  for (unsigned i = 0; i < exp; ++i) out *= base;
  return out;
}

inline Integer factorial(unsigned n) {
  Integer out = 1;
  for (unsigned i = 2; i <= n; ++i) out *= i;
  return out;
}

inline Integer binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  Integer out = 1;
  for (unsigned i = 1; i <= k; ++i) {
    out *= n - k + i;
    out /= i;
  }
  return out;
}

inline std::string to_string(const Integer& a) { return a.str(); }

/// `p/q`, or `p` when the denominator is 1.
inline std::string to_string(const Rational& r) {
  if (is_integer(r)) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

/// Positional decimal with `digits` significant digits, round-half-even.
inline std::string to_decimal(const Rational& value, int digits = 12) {
  if (value == 0) return "0";
  const bool negative = value < 0;
  const Integer num = abs(numerator(value));
  const Integer den = denominator(value);

  // Choose k with 10^(digits-1) <= num * 10^k / den < 10^digits.
  int k = digits - 1 - (static_cast<int>(num.str().size()) - static_cast<int>(den.str().size()));
  const Integer lower = pow(Integer(10), static_cast<unsigned>(digits - 1));
  const Integer upper = lower * 10;
  auto scaled_floor = [&](int shift, Integer& rem, Integer& divisor) {
    Integer top = num;
    divisor = den;
    if (shift >= 0) {
      top *= pow(Integer(10), static_cast<unsigned>(shift));
    } else {
      divisor *= pow(Integer(10), static_cast<unsigned>(-shift));
    }
    Integer q = top / divisor;
    rem = top - q * divisor;
    return q;
  };
  Integer rem, divisor;
  Integer q = scaled_floor(k, rem, divisor);
  while (q >= upper) q = scaled_floor(--k, rem, divisor);
  while (q < lower) q = scaled_floor(++k, rem, divisor);
  const Integer twice = 2 * rem;
  if (twice > divisor || (twice == divisor && q % 2 == 1)) q += 1;
  if (q == upper) {
    q = lower;
    --k;
  }

  std::string body = q.str();
  const int int_digits = digits - k;
  std::string out;
  if (int_digits <= 0) {
    out = "0." + std::string(static_cast<size_t>(-int_digits), '0') + body;
  } else if (int_digits >= digits) {
    out = body + std::string(static_cast<size_t>(int_digits - digits), '0');
  } else {
    out = body.substr(0, static_cast<size_t>(int_digits)) + "." +
          body.substr(static_cast<size_t>(int_digits));
  }
  return negative ? "-" + out : out;
}

}  // namespace toricsplit
