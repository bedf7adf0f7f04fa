#pragma once

// Rigorous dyadic interval enclosures and a deterministic log2 for rationals.

#include <cstdint>
#include <string>

#include "bigint.hpp"
#include "errors.hpp"

namespace tricol {

inline constexpr std::int64_t kMaxPrecisionBits = 1'000'000;

/// The closed interval [lo / 2^scale, hi / 2^scale].
struct DyadicInterval {
  BigInt lo;
  BigInt hi;
  std::int64_t scale = 0;

  static DyadicInterval exact(const BigInt& integer) { return {integer, integer, 0}; }

  DyadicInterval rescaled(std::int64_t new_scale) const {
    if (new_scale < scale) throw PreconditionError("cannot coarsen a dyadic interval");
    const auto shift = static_cast<mp_bitcnt_t>(new_scale - scale);
    DyadicInterval out{lo, hi, new_scale};
    mpz_mul_2exp(out.lo.get_mpz_t(), lo.get_mpz_t(), shift);
    mpz_mul_2exp(out.hi.get_mpz_t(), hi.get_mpz_t(), shift);
    return out;
  }

  /// Multiplication by a nonnegative integer.
  DyadicInterval times(const BigInt& k) const {
    if (sgn(k) < 0) throw PreconditionError("DyadicInterval::times expects k >= 0");
    return {lo * k, hi * k, scale};
  }

  friend DyadicInterval operator+(const DyadicInterval& a, const DyadicInterval& b) {
    const std::int64_t s = std::max(a.scale, b.scale);
    const auto x = a.rescaled(s);
    const auto y = b.rescaled(s);
    return {x.lo + y.lo, x.hi + y.hi, s};
  }

  friend DyadicInterval operator-(const DyadicInterval& a, const DyadicInterval& b) {
    const std::int64_t s = std::max(a.scale, b.scale);
    const auto x = a.rescaled(s);
    const auto y = b.rescaled(s);
    return {x.lo - y.hi, x.hi - y.lo, s};
  }

  /// Every point of *this lies strictly below every point of other.
  bool certainly_below(const DyadicInterval& other) const {
    const std::int64_t s = std::max(scale, other.scale);
    return rescaled(s).hi < other.rescaled(s).lo;
  }

  bool contains(const BigRational& x) const {
    const BigInt den = pow2(scale);
    return ratio(lo, den) <= x && x <= ratio(hi, den);
  }

  /// hi - lo <= 2^-bits
  bool width_at_most_pow2(std::int64_t bits) const {
    BigInt w = hi - lo;
    if (bits >= scale) {
      mpz_mul_2exp(w.get_mpz_t(), w.get_mpz_t(), static_cast<mp_bitcnt_t>(bits - scale));
      return w <= 1;
    }
    return w <= pow2(scale - bits);
  }

  std::string lower_decimal(int digits = 20) const { return render(lo, digits, false); }
  std::string upper_decimal(int digits = 20) const { return render(hi, digits, true); }

  double approx() const {
    return ratio(lo + hi, pow2(scale + 1)).get_d();
  }

 private:
  // Decimal rendering of x / 2^scale rounded outward (down or up).
  std::string render(const BigInt& x, int digits, bool round_up) const {
    BigInt ten_d;
    mpz_ui_pow_ui(ten_d.get_mpz_t(), 10, static_cast<unsigned long>(digits));
    const BigInt num = x * ten_d;
    const BigInt den = pow2(scale);
    BigInt v = round_up ? ceil_div(num, den) : floor_div(num, den);
    const bool negative = sgn(v) < 0;
    if (negative) v = -v;
    std::string s = v.get_str(10);
    if (digits > 0) {
      if (s.size() <= static_cast<std::size_t>(digits))
        s.insert(0, static_cast<std::size_t>(digits) + 1 - s.size(), '0');
      s.insert(s.size() - static_cast<std::size_t>(digits), 1, '.');
    }
    return negative ? "-" + s : s;
  }
};

/// Enclosure of log2(num/den) with width <= 2^-precision_bits.
///
/// The integer part comes from exact bit-length comparison; fractional bits
/// come from repeated squaring in fixed point with outward rounding. When a
/// squaring step cannot decide whether the square reached 2, the working
/// precision is doubled and the expansion restarts.
inline DyadicInterval log2_enclosure(const BigInt& num, const BigInt& den, std::int64_t precision_bits) {
  if (sgn(num) <= 0 || sgn(den) <= 0) throw ZeroValueError("log2 of a non-positive value");
  if (precision_bits < 1) throw PreconditionError("precision must be positive");
  if (precision_bits > kMaxPrecisionBits) throw ResourceLimitError("log2 precision request too large");

  // num / den = 2^e * y with 1 <= y < 2
  std::int64_t e = bit_length(num) - bit_length(den);
  auto at_least_pow2 = [&](std::int64_t j) {
    return j >= 0 ? num >= den * pow2(j) : num * pow2(-j) >= den;
  };
  while (!at_least_pow2(e)) --e;
  while (at_least_pow2(e + 1)) ++e;

  const BigInt y_num = e >= 0 ? num : BigInt(num * pow2(-e));
  const BigInt y_den = e >= 0 ? BigInt(den * pow2(e)) : den;
  if (y_num == y_den) {
    return {BigInt(e), BigInt(e), 0};
  }

  for (std::int64_t work = precision_bits + 64;; work *= 2) {
    if (work > 4 * kMaxPrecisionBits) throw ResourceLimitError("log2 precision escalation exhausted");
    const auto w = static_cast<mp_bitcnt_t>(work);
    BigInt lo = floor_div(y_num * pow2(work), y_den);
    BigInt hi = ceil_div(y_num * pow2(work), y_den);
    const BigInt two = pow2(work + 1);
    BigInt bits = 0;
    bool decided = true;
    for (std::int64_t i = 0; i < precision_bits; ++i) {
      lo *= lo;
      mpz_fdiv_q_2exp(lo.get_mpz_t(), lo.get_mpz_t(), w);
      hi *= hi;
      mpz_cdiv_q_2exp(hi.get_mpz_t(), hi.get_mpz_t(), w);
      mpz_mul_2exp(bits.get_mpz_t(), bits.get_mpz_t(), 1);
      if (lo >= two) {
        bits += 1;
        mpz_fdiv_q_2exp(lo.get_mpz_t(), lo.get_mpz_t(), 1);
        mpz_cdiv_q_2exp(hi.get_mpz_t(), hi.get_mpz_t(), 1);
      } else if (hi >= two) {
        decided = false;
        break;
      }
    }
    if (!decided) continue;
    BigInt lo_out = BigInt(e) * pow2(precision_bits) + bits;
    return {lo_out, lo_out + 1, precision_bits};
  }
}

}  // namespace tricol
