#pragma once

// Approximations 3^k ≈ 2^n driven by the irrationality of log2 3.
//
// Integer parts of k·log2 3 are always decided by exact power comparison.
// Fractional parts are dyadic enclosures, refined until comparisons decide.

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bigint.hpp"
#include "errors.hpp"
#include "interval.hpp"
#include "triadic.hpp"

namespace tricol {

/// Enclosure [lo, hi] of log2 3 with hi - lo <= 2^-precision_bits.
inline DyadicInterval log2_3(std::int64_t precision_bits) {
  if (precision_bits < 8) throw PreconditionError("log2_3 requires at least 8 bits of precision");
  return log2_enclosure(BigInt(3), BigInt(1), precision_bits);
}

/// n = [k·log2 3] (exact) and an enclosure of k·log2 3 - n.
struct FracPart {
  std::int64_t n = 0;
  DyadicInterval frac;
};

namespace detail {

inline std::int64_t floor_k_log2_3(std::int64_t k) { return bit_length(pow3(k)) - 1; }

inline FracPart frac_part_with(std::int64_t k, std::int64_t n, const DyadicInterval& log2_3_enclosure) {
  return {n, log2_3_enclosure.times(BigInt(static_cast<long>(k))) - DyadicInterval::exact(BigInt(static_cast<long>(n)))};
}

inline FracPart frac_part_with(std::int64_t k, const DyadicInterval& log2_3_enclosure) {
  return frac_part_with(k, floor_k_log2_3(k), log2_3_enclosure);
}

}  // namespace detail

inline FracPart frac_part(std::int64_t k, std::int64_t precision_bits = 64) {
  if (k < 1) throw PreconditionError("frac_part requires k >= 1");
  const std::int64_t bits = precision_bits + bit_length(BigInt(static_cast<long>(k)));
  return detail::frac_part_with(k, log2_3(bits));
}

enum class PairKind { Record, Steer };

inline const char* to_string(PairKind kind) { return kind == PairKind::Record ? "record" : "steer"; }

/// lhs < mid < rhs, all exact integers.
struct PowerCertificate {
  BigInt lhs;
  BigInt mid;
  BigInt rhs;

  bool holds() const { return lhs < mid && mid < rhs; }
};

struct ApproxPair {
  std::int64_t k = 0;
  std::int64_t n = 0;
  PairKind kind = PairKind::Record;
  PowerCertificate certificate;
  std::optional<DyadicInterval> frac;  // records only
};

/// Running maxima of frac(k·log2 3) over 1 <= k <= k_max, each paired with
/// n = [k·log2 3] + 1 and certified by 2^{n-1} < 3^k < 2^n.
inline std::vector<ApproxPair> record_pairs(std::int64_t k_max) {
  if (k_max < 1) throw PreconditionError("record_pairs requires k_max >= 1");
  std::int64_t bits = 64 + bit_length(BigInt(static_cast<long>(k_max)));
  DyadicInterval log2_3_enc = log2_3(bits);

  std::vector<ApproxPair> out;
  FracPart best = detail::frac_part_with(1, log2_3_enc);
  std::int64_t best_k = 1;
  auto push_record = [&](std::int64_t k, const FracPart& fp) {
    const std::int64_t n = fp.n + 1;
    out.push_back({k, n, PairKind::Record, {pow2(n - 1), pow3(k), pow2(n)}, fp.frac});
  };
  push_record(1, best);

  BigInt three_k = 3;
  for (std::int64_t k = 2; k <= k_max; ++k) {
    three_k *= 3;
    FracPart cur = detail::frac_part_with(k, bit_length(three_k) - 1, log2_3_enc);
    while (!best.frac.certainly_below(cur.frac) && !cur.frac.certainly_below(best.frac)) {
      bits *= 2;
      if (bits > kMaxPrecisionBits) throw ResourceLimitError("record_pairs precision escalation exhausted");
      log2_3_enc = log2_3(bits);
      best = detail::frac_part_with(best_k, log2_3_enc);
      cur = detail::frac_part_with(k, cur.n, log2_3_enc);
    }
    if (best.frac.certainly_below(cur.frac)) {
      best = cur;
      best_k = k;
      push_record(k, cur);
    }
  }
  return out;
}

enum class PrefixCase { Low, High };  // 1 <= ψ₀ < 2, 2 <= ψ₀ < 3

inline const char* to_string(PrefixCase c) { return c == PrefixCase::Low ? "low" : "high"; }

/// Target prefix ψ with p = [log₃ ψ], ψ₀ = 3^{-p} ψ and τ, where
/// 2^τ = ψ₀ (low case) or (2/3)·ψ₀ (high case).
struct PrefixTarget {
  BigInt psi;
  std::int64_t p = 0;
  TriadicRational psi0;
  PrefixCase case_tag = PrefixCase::Low;
  DyadicInterval tau;
  /// ln(1 + 3^{-p-2}) / ln 2; display only, never used for acceptance.
  double epsilon_budget = 0.0;
};

inline PrefixTarget prefix_target(const BigInt& psi, std::int64_t tau_bits = 64) {
  if (psi < 2) throw PreconditionError("prefix_target requires psi >= 2");
  PrefixTarget t;
  t.psi = psi;
  t.p = digits3(psi) - 1;
  t.psi0 = normalize(psi, t.p);
  const BigInt three_p = pow3(t.p);
  t.case_tag = psi < 2 * three_p ? PrefixCase::Low : PrefixCase::High;

  // 2^τ as an exact rational num/den, then check 1 <= 2^τ < 2
  const BigInt num = t.case_tag == PrefixCase::Low ? psi : BigInt(2 * psi);
  const BigInt den = t.case_tag == PrefixCase::Low ? three_p : BigInt(3 * three_p);
  if (!(num >= den && num < 2 * den)) throw InvariantViolation("tau outside [0,1) for psi=" + to_decimal(psi));
  t.tau = log2_enclosure(num, den, tau_bits);
  t.epsilon_budget = std::log1p(std::pow(3.0, static_cast<double>(-t.p - 2))) / std::log(2.0);
  return t;
}

inline PrefixTarget prefix_target(long psi) { return prefix_target(BigInt(psi)); }

namespace detail {

// Low case: (3ψ-1)·2^n < 3^{k+p+1} < (3ψ+1)·2^n.
// High case: (3ψ-1)·2^{n+1} < 3^{k+p+2} < (3ψ+1)·2^{n+1}.
inline PowerCertificate steering_certificate(const PrefixTarget& t, std::int64_t k, std::int64_t n) {
  const bool high = t.case_tag == PrefixCase::High;
  const BigInt scale = pow2(n + (high ? 1 : 0));
  return {(3 * t.psi - 1) * scale, pow3(k + t.p + (high ? 2 : 1)), (3 * t.psi + 1) * scale};
}

}  // namespace detail

/// Up to `count` pairs (k, n), 1 <= k <= k_max, placing 3^{k+p}/2^n (low
/// case) or 3^{k+p+1}/2^{n+1} (high case) strictly within 1/3 of ψ. Fewer
/// pairs are returned when k_max runs out.
inline std::vector<ApproxPair> steering_pairs(const PrefixTarget& t, std::size_t count, std::int64_t k_max) {
  if (count < 1) throw PreconditionError("steering_pairs requires count >= 1");
  std::vector<ApproxPair> out;
  const bool high = t.case_tag == PrefixCase::High;
  const BigInt three_psi = 3 * t.psi;
  for (std::int64_t k = 1; k <= k_max && out.size() < count; ++k) {
    const BigInt x = pow3(k + t.p + (high ? 2 : 1));
    const BigInt y = floor_div(x, three_psi);
    if (sgn(y) <= 0) continue;
    const std::int64_t n0 = bit_length(y) - 1 - (high ? 1 : 0);
    for (std::int64_t n = std::max<std::int64_t>(1, n0 - 1); n <= n0 + 2; ++n) {
      auto cert = detail::steering_certificate(t, k, n);
      if (cert.holds()) {
        out.push_back({k, n, PairKind::Steer, std::move(cert), std::nullopt});
        break;
      }
    }
  }
  return out;
}

/// φ ⪯ θ: the base-3 digits of φ are an initial segment of those of θ.
inline bool prefix_order(const BigInt& phi, const BigInt& theta) {
  if (phi < 1 || theta < 1) throw PreconditionError("prefix_order requires positive arguments");
  const std::int64_t p = digits3(phi) - 1;
  const std::int64_t q = digits3(theta) - 1;
  return q >= p && phi == floor_div(theta, pow3(q - p));
}

inline bool prefix_order(long phi, long theta) { return prefix_order(BigInt(phi), BigInt(theta)); }

}  // namespace tricol
