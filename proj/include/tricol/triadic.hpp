#pragma once

// Exact arithmetic on triadic rationals m / 3^r (the set 𝐍 = ∪ 3^{-r}ℕ).
//
// Every comparison, floor and logarithm here is carried out on integers.
// Floating point only appears in to_decimal(), which is for display.

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "bigint.hpp"
#include "errors.hpp"

namespace tricol {

/// A nonnegative value m / 3^r kept in normal form: r == 0 or 3 ∤ m.
/// Zero is stored as (0, 0). Under normal form r is the minimal q with
/// 3^q·b integral.
class TriadicRational {
 public:
  TriadicRational() = default;

  explicit TriadicRational(BigInt integer) : numerator_(std::move(integer)) {
    if (sgn(numerator_) < 0) throw PreconditionError("triadic rationals are nonnegative");
  }

  explicit TriadicRational(unsigned long integer) : numerator_(integer) {}

  /// Canonical value m / 3^r.
  static TriadicRational from_parts(BigInt m, std::int64_t r) {
    if (sgn(m) < 0) throw PreconditionError("triadic rationals are nonnegative");
    if (r < 0) throw PreconditionError("denominator exponent must be nonnegative");
    TriadicRational out;
    out.numerator_ = std::move(m);
    out.denom_exp_ = r;
    out.normalize_in_place();
    return out;
  }

  const BigInt& numerator() const noexcept { return numerator_; }
  std::int64_t denom_exp() const noexcept { return denom_exp_; }
  bool is_zero() const noexcept { return sgn(numerator_) == 0; }

  /// 3^k · this, exact for any signed k.
  TriadicRational times_pow3(std::int64_t k) const {
    if (is_zero() || k == 0) return *this;
    if (k < 0) return from_parts(numerator_, checked_add(denom_exp_, -k));
    if (k <= denom_exp_) {
      TriadicRational out;
      out.numerator_ = numerator_;
      out.denom_exp_ = denom_exp_ - k;
      return out;
    }
    TriadicRational out;
    out.numerator_ = numerator_ * pow3(k - denom_exp_);
    return out;
  }

  BigRational to_rational() const {
    BigRational q(numerator_, pow3(denom_exp_));
    q.canonicalize();
    return q;
  }

  friend bool operator==(const TriadicRational&, const TriadicRational&) = default;

  friend std::strong_ordering operator<=>(const TriadicRational& a, const TriadicRational& b) {
    int c;
    if (a.denom_exp_ == b.denom_exp_) {
      c = cmp(a.numerator_, b.numerator_);
    } else if (a.denom_exp_ < b.denom_exp_) {
      c = cmp(BigInt(a.numerator_ * pow3(b.denom_exp_ - a.denom_exp_)), b.numerator_);
    } else {
      c = cmp(a.numerator_, BigInt(b.numerator_ * pow3(a.denom_exp_ - b.denom_exp_)));
    }
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  /// Canonical text form "m/3^r" (r is printed even when zero).
  std::string to_string() const {
    return to_decimal(numerator_) + "/3^" + std::to_string(denom_exp_);
  }

  /// Base-3 digit string with a radix point, e.g. 7/3 -> "2.1_3".
  std::string to_base3_string() const {
    if (is_zero()) return "0_3";
    std::string digits = numerator_.get_str(3);
    const auto len = static_cast<std::int64_t>(digits.size());
    if (denom_exp_ == 0) return digits + "_3";
    if (denom_exp_ < len) {
      digits.insert(static_cast<std::size_t>(len - denom_exp_), 1, '.');
      return digits + "_3";
    }
    return "0." + std::string(static_cast<std::size_t>(denom_exp_ - len), '0') + digits + "_3";
  }

  /// Truncated decimal expansion. Display only.
  std::string to_decimal_string(int fraction_digits = 12) const {
    const BigInt den = pow3(denom_exp_);
    BigInt scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(fraction_digits));
    const BigInt scaled = floor_div(numerator_ * scale, den);
    std::string s = scaled.get_str(10);
    if (fraction_digits == 0) return s;
    if (s.size() <= static_cast<std::size_t>(fraction_digits))
      s.insert(0, static_cast<std::size_t>(fraction_digits) + 1 - s.size(), '0');
    s.insert(s.size() - static_cast<std::size_t>(fraction_digits), 1, '.');
    return s;
  }

  /// Accepts "m/3^r", a plain decimal integer, or a base-3 string "d.dd_3".
  static TriadicRational parse(std::string_view text) {
    auto fail = [&] { return ParseError("cannot parse triadic rational: '" + std::string(text) + "'"); };
    auto all_of = [](std::string_view s, char lo, char hi) {
      if (s.empty()) return false;
      for (char ch : s)
        if (ch < lo || ch > hi) return false;
      return true;
    };
    if (text.ends_with("_3")) {
      std::string_view body = text.substr(0, text.size() - 2);
      const auto dot = body.find('.');
      std::string digits(body.substr(0, dot));
      std::int64_t r = 0;
      if (dot != std::string_view::npos) {
        std::string_view frac = body.substr(dot + 1);
        if (!all_of(frac, '0', '2')) throw fail();
        digits += frac;
        r = static_cast<std::int64_t>(frac.size());
      }
      if (!all_of(digits, '0', '2')) throw fail();
      return from_parts(BigInt(digits, 3), r);
    }
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) {
      if (!all_of(text, '0', '9')) throw fail();
      return from_parts(BigInt(std::string(text), 10), 0);
    }
    std::string_view num = text.substr(0, slash);
    std::string_view den = text.substr(slash + 1);
    if (!den.starts_with("3^")) throw fail();
    den.remove_prefix(2);
    if (!all_of(num, '0', '9') || !all_of(den, '0', '9') || den.size() > 18) throw fail();
    return from_parts(BigInt(std::string(num), 10), std::stoll(std::string(den)));
  }

 private:
  void normalize_in_place() {
    if (sgn(numerator_) == 0) {
      denom_exp_ = 0;
      return;
    }
    while (denom_exp_ > 0 && mpz_divisible_ui_p(numerator_.get_mpz_t(), 3)) {
      mpz_divexact_ui(numerator_.get_mpz_t(), numerator_.get_mpz_t(), 3);
      --denom_exp_;
    }
  }

  BigInt numerator_{0};
  std::int64_t denom_exp_ = 0;
};

inline TriadicRational normalize(BigInt m, std::int64_t r) {
  return TriadicRational::from_parts(std::move(m), r);
}

/// [3^k b], the base-3 window of b down to position -k.
struct TernaryWindow {
  BigInt value;
  std::int64_t scale_exp = 0;

  friend bool operator==(const TernaryWindow&, const TernaryWindow&) = default;
};

/// Exact floor of 3^k · b.
inline BigInt floor_scale(const TriadicRational& b, std::int64_t k) {
  const std::int64_t shift = k - b.denom_exp();
  if (shift >= 0) return b.numerator() * pow3(shift);
  return floor_div(b.numerator(), pow3(-shift));
}

inline TernaryWindow window(const TriadicRational& b, std::int64_t k) {
  return {floor_scale(b, k), k};
}

/// floor(log3 b), exact; 3^result <= b < 3^(result+1).
inline std::int64_t log3_floor(const TriadicRational& b) {
  if (b.is_zero()) throw ZeroValueError("log3_floor(0) is undefined");
  return digits3(b.numerator()) - 1 - b.denom_exp();
}

/// 1 <= b < 3, compared exactly.
inline bool in_unit_window(const TriadicRational& b) {
  return !b.is_zero() && log3_floor(b) == 0;
}

struct TernaryDigit {
  std::int64_t position = 0;  // coefficient of 3^position
  int value = 0;

  friend bool operator==(const TernaryDigit&, const TernaryDigit&) = default;
};

/// Base-3 digits of b, most significant first. The leading digit sits at
/// position log3_floor(b); the last at position -denom_exp(b).
inline std::vector<TernaryDigit> digits_base3(const TriadicRational& b) {
  if (b.is_zero()) throw ZeroValueError("digits_base3(0) is undefined");
  const std::string s = b.numerator().get_str(3);
  std::vector<TernaryDigit> out;
  out.reserve(s.size());
  std::int64_t pos = static_cast<std::int64_t>(s.size()) - 1 - b.denom_exp();
  for (char ch : s) out.push_back({pos--, ch - '0'});
  return out;
}

/// Membership in Φ_ξ: denom_exp(b) > q₀ and [3^{q₀} b] = ξ, with q₀ = [log₃ ξ].
inline bool phi_member(const TriadicRational& b, const BigInt& xi) {
  if (xi < 2) throw PreconditionError("phi_member requires xi >= 2");
  const std::int64_t q0 = digits3(xi) - 1;
  return b.denom_exp() > q0 && floor_scale(b, q0) == xi;
}

inline bool phi_member(const TriadicRational& b, long xi) { return phi_member(b, BigInt(xi)); }

}  // namespace tricol
