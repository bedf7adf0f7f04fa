#pragma once

// Thin helpers over GMP integers used throughout the library.

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <limits>
#include <string>

#include "errors.hpp"

namespace tricol {

using BigInt = mpz_class;
using BigRational = mpq_class;

namespace detail {

inline constexpr std::size_t kPow3Cached = 1024;

inline const std::array<BigInt, kPow3Cached>& pow3_table() {
  static const auto table = [] {
    std::array<BigInt, kPow3Cached> t;
    t[0] = 1;
    for (std::size_t i = 1; i < kPow3Cached; ++i) t[i] = t[i - 1] * 3;
    return t;
  }();
  return table;
}

inline unsigned long checked_ulong(std::int64_t e) {
  if (e < 0) throw PreconditionError("negative exponent");
  if (static_cast<std::uint64_t>(e) > std::numeric_limits<unsigned long>::max())
    throw ResourceLimitError("exponent too large");
  return static_cast<unsigned long>(e);
}

}  // namespace detail

inline BigInt pow3(std::int64_t e) {
  const auto ue = detail::checked_ulong(e);
  if (ue < detail::kPow3Cached) return detail::pow3_table()[ue];
  BigInt r;
  mpz_ui_pow_ui(r.get_mpz_t(), 3, ue);
  return r;
}

inline BigInt pow2(std::int64_t e) {
  BigInt r;
  mpz_setbit(r.get_mpz_t(), detail::checked_ulong(e));
  return r;
}

/// Sign of x − 3^e without materializing small powers.
inline int cmp_pow3(const BigInt& x, std::int64_t e) {
  const auto ue = detail::checked_ulong(e);
  if (ue < detail::kPow3Cached) return cmp(x, detail::pow3_table()[ue]);
  return cmp(x, pow3(e));
}

/// Number of base-3 digits of x > 0.
inline std::int64_t digits3(const BigInt& x) {
  if (sgn(x) <= 0) throw ZeroValueError("digits3 of a non-positive integer");
  auto d = static_cast<std::int64_t>(mpz_sizeinbase(x.get_mpz_t(), 3));
  // mpz_sizeinbase may overshoot by one
  if (d > 1 && cmp_pow3(x, d - 1) < 0) --d;
  return d;
}

/// Bit length of x > 0, i.e. floor(log2 x) + 1.
inline std::int64_t bit_length(const BigInt& x) {
  if (sgn(x) <= 0) throw ZeroValueError("bit_length of a non-positive integer");
  return static_cast<std::int64_t>(mpz_sizeinbase(x.get_mpz_t(), 2));
}

/// floor(num / den) for den > 0.
/// num/den in lowest terms.
inline BigRational ratio(const BigInt& num, const BigInt& den) {
  BigRational q(num, den);
  q.canonicalize();
  return q;
}

inline BigInt floor_div(const BigInt& num, const BigInt& den) {
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return q;
}

/// ceil(num / den) for den > 0.
inline BigInt ceil_div(const BigInt& num, const BigInt& den) {
  BigInt q;
  mpz_cdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return q;
}

/// floor(log3(num/den)) for positive num, den.
inline std::int64_t floor_log3(const BigInt& num, const BigInt& den) {
  if (sgn(num) <= 0 || sgn(den) <= 0) throw ZeroValueError("floor_log3 of a non-positive value");
  std::int64_t e = digits3(num) - digits3(den);
  // 3^e <= num/den < 3^(e+1) up to one step either way
  auto holds_low = [&](std::int64_t j) {
    return j >= 0 ? num >= den * pow3(j) : num * pow3(-j) >= den;
  };
  while (!holds_low(e)) --e;
  while (holds_low(e + 1)) ++e;
  return e;
}

inline std::string to_decimal(const BigInt& x) { return x.get_str(10); }

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_add_overflow(a, b, &out)) throw ResourceLimitError("exponent overflow");
  return out;
}

}  // namespace tricol
