#pragma once

// Col₂, Col₃, Col₄, orbit iteration and the rescaling c_α = a_α / 3^{q_α}.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bigint.hpp"
#include "errors.hpp"
#include "triadic.hpp"

namespace tricol {

/// (3a+1)/2 for odd a, a/2 for even a.
inline BigInt col2_step(const BigInt& a) {
  if (sgn(a) <= 0) throw PreconditionError("col2_step requires a >= 1");
  BigInt out;
  if (mpz_odd_p(a.get_mpz_t())) {
    out = 3 * a + 1;
    mpz_tdiv_q_2exp(out.get_mpz_t(), out.get_mpz_t(), 1);
  } else {
    mpz_tdiv_q_2exp(out.get_mpz_t(), a.get_mpz_t(), 1);
  }
  return out;
}

/// Rounded halving on 𝐍: b/2 when that stays triadic, otherwise
/// (b + 3^{-q-1})/2. On the normal form this is numerator -> Col₂(numerator),
/// with the denominator exponent bumped by one in the odd case.
inline TriadicRational col3_step(const TriadicRational& b) {
  if (b.is_zero()) throw ZeroValueError("col3_step(0) is undefined");
  const bool odd = mpz_odd_p(b.numerator().get_mpz_t()) != 0;
  return TriadicRational::from_parts(col2_step(b.numerator()),
                                     odd ? checked_add(b.denom_exp(), 1) : b.denom_exp());
}

inline TriadicRational col3_iterate(TriadicRational b, std::uint64_t n) {
  for (std::uint64_t i = 0; i < n; ++i) b = col3_step(b);
  return b;
}

/// Exact check of 2^{-n} b <= value <= 2^{-n} b + 3^{-q}, q = denom_exp(b).
inline bool col3_bound_holds(const TriadicRational& b, std::int64_t n, const TriadicRational& value) {
  const std::int64_t r = std::max(b.denom_exp(), value.denom_exp());
  const BigInt two_n = pow2(n);
  const BigInt lower = b.numerator() * pow3(r - b.denom_exp());
  const BigInt mid = two_n * value.numerator() * pow3(r - value.denom_exp());
  const BigInt upper = lower + two_n * pow3(r - b.denom_exp());
  return lower <= mid && mid <= upper;
}

/// Col₃ on [2,3), 3·Col₃ on [1,2). The result is checked to lie in [1,3).
inline TriadicRational col4_step(const TriadicRational& b) {
  if (!in_unit_window(b)) throw PreconditionError("col4_step requires 1 <= b < 3, got " + b.to_string());
  const bool upper_half = b.numerator() >= 2 * pow3(b.denom_exp());
  TriadicRational out = col3_step(b);
  if (!upper_half) out = out.times_pow3(1);
  if (!in_unit_window(out))
    throw InvariantViolation("col4_step left [1,3): " + b.to_string() + " -> " + out.to_string());
  return out;
}

/// One row of the Col₄ⁿ(b) = 3^k · Col₃ⁿ(b) identity.
struct RescaledIterate {
  std::uint64_t n = 0;
  TriadicRational col3_value;
  std::int64_t rescale_exp = 0;
  TriadicRational col4_value;
};

/// Rows n = 0..n_max. With cross_check on, Col₄ⁿ(b) is computed by iterating
/// col4_step and compared against the rescaled Col₃ⁿ(b); a mismatch throws.
inline std::vector<RescaledIterate> rescaled_iterates(const TriadicRational& b, std::uint64_t n_max,
                                                      bool cross_check = true) {
  if (!in_unit_window(b)) throw PreconditionError("rescaled_iterates requires 1 <= b < 3");
  std::vector<RescaledIterate> rows;
  rows.reserve(n_max + 1);
  TriadicRational col3 = b;
  TriadicRational col4 = b;
  for (std::uint64_t n = 0;; ++n) {
    const std::int64_t k = -log3_floor(col3);
    TriadicRational rescaled = col3.times_pow3(k);
    if (cross_check && rescaled != col4) {
      throw InvariantViolation("Col4^n(b) != 3^k Col3^n(b) for b=" + b.to_string() + ", n=" +
                               std::to_string(n) + ": " + col4.to_string() + " vs " + rescaled.to_string());
    }
    rows.push_back({n, col3, k, std::move(rescaled)});
    if (n == n_max) break;
    col3 = col3_step(col3);
    if (cross_check) col4 = col4_step(col4);
  }
  return rows;
}

struct OrbitRecord {
  std::uint64_t alpha = 0;
  BigInt a;
  std::int64_t q = 0;
  TriadicRational c;
  std::optional<BigInt> window;  // [3^p c_α] when a window exponent was requested
};

struct OrbitOptions {
  std::uint64_t max_steps = 1'000'000;
  std::optional<std::int64_t> window_exp;
  bool check_relation = true;
  const std::atomic<bool>* cancel = nullptr;
};

struct OrbitResult {
  BigInt a0;
  std::vector<OrbitRecord> records;
  bool reached_one = false;
  /// Steps α at which c_{α+1} = Col₄(c_α) was checked and failed.
  std::vector<std::uint64_t> relation_failures;
  std::uint64_t relation_checks = 0;
  bool interrupted = false;
};

struct OrbitWalk {
  std::uint64_t steps = 0;
  bool reached_one = false;
  bool stopped = false;
};

/// Drives Col₂ from a0, calling visit(alpha, a, q) for α = 0, 1, ...
/// Stops at a = 1, after max_steps applications of Col₂, or when visit
/// returns false.
template <class Visitor>
OrbitWalk walk_orbit(const BigInt& a0, std::uint64_t max_steps, Visitor&& visit) {
  if (sgn(a0) <= 0) throw PreconditionError("orbit requires a0 >= 1");
  OrbitWalk walk;
  BigInt a = a0;
  std::int64_t q = digits3(a) - 1;
  for (std::uint64_t alpha = 0;; ++alpha) {
    if (!visit(alpha, static_cast<const BigInt&>(a), q)) {
      walk.stopped = true;
      walk.steps = alpha;
      return walk;
    }
    if (a == 1) {
      walk.reached_one = true;
      walk.steps = alpha;
      return walk;
    }
    if (alpha == max_steps) {
      walk.steps = alpha;
      return walk;
    }
    a = col2_step(a);
    // Col₂ changes the magnitude by at most one ternary digit
    while (cmp_pow3(a, q) < 0) --q;
    while (cmp_pow3(a, q + 1) >= 0) ++q;
  }
}

/// The rescaled value c_α = a_α / 3^{q_α}.
inline TriadicRational rescale(const BigInt& a, std::int64_t q) { return normalize(a, q); }

/// Orbit records from a0 until a = 1 (inclusive) or max_steps. When
/// check_relation is set, c_{α+1} = Col₄(c_α) is tested for α >= 1 and also
/// at α = 0 when 3 ∤ a0; failures are collected, not thrown.
inline OrbitResult orbit(const BigInt& a0, const OrbitOptions& options = {}) {
  OrbitResult result;
  result.a0 = a0;
  const bool check_first = !mpz_divisible_ui_p(a0.get_mpz_t(), 3);
  std::optional<TriadicRational> expected_next;
  const auto walk = walk_orbit(a0, options.max_steps, [&](std::uint64_t alpha, const BigInt& a, std::int64_t q) {
    if (options.cancel && options.cancel->load(std::memory_order_relaxed)) return false;
    OrbitRecord rec{alpha, a, q, rescale(a, q), std::nullopt};
    if (options.window_exp) rec.window = floor_scale(rec.c, *options.window_exp);
    if (options.check_relation) {
      if (expected_next) {
        ++result.relation_checks;
        if (*expected_next != rec.c) result.relation_failures.push_back(alpha - 1);
      }
      expected_next.reset();
      if (alpha >= 1 || check_first) expected_next = col4_step(rec.c);
    }
    result.records.push_back(std::move(rec));
    return true;
  });
  result.reached_one = walk.reached_one;
  result.interrupted = walk.stopped;
  return result;
}

inline OrbitResult orbit(unsigned long a0, const OrbitOptions& options = {}) {
  return orbit(BigInt(a0), options);
}

}  // namespace tricol
