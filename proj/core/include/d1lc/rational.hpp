#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace d1lc {

// Exact rationals. Sums such as sum_u 1/p(u) have denominators that are lcms
// of many distinct palette sizes, which overflow 64-bit integers quickly.
using Rational = mpq_class;
using BigInt = mpz_class;

inline Rational make_rational(std::int64_t num, std::int64_t den = 1) {
  Rational q(mpz_class(static_cast<long>(num)), mpz_class(static_cast<long>(den)));
  q.canonicalize();
  return q;
}

// Accepts "a", "a/b" and plain decimals such as "0.125".
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);
double to_double(const Rational& q);

// Smallest integer >= n^q for a nonnegative rational exponent q (exact).
std::uint64_t ceil_pow(std::uint64_t n, const Rational& q);
// Largest integer <= n^q (exact).
std::uint64_t floor_pow(std::uint64_t n, const Rational& q);

}  // namespace d1lc
