#pragma once

// Orbit statistics and property harnesses.
//
// The prefix-hit counts and the coverage minimum are empirical summaries of
// finite orbits. The harnesses are pass/fail: any violation is a bug.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bigint.hpp"
#include "diophantine.hpp"
#include "maps.hpp"
#include "random.hpp"
#include "triadic.hpp"

namespace tricol {

// ---------------------------------------------------------------------------
// Prefix hits

struct PrefixHitReport {
  BigInt a0;
  BigInt psi;
  std::int64_t p = 0;
  std::vector<std::uint64_t> hits;
  std::uint64_t total_steps = 0;  // number of records visited
  bool reached_one = false;
  /// α where [3^{p-q_α} a_α] and [3^p c_α] disagreed (expected empty).
  std::vector<std::uint64_t> window_disagreements;
};

/// Steps α with [3^p c_α] = ψ along the orbit of a0, counted from α = 0.
inline PrefixHitReport prefix_hits(const BigInt& a0, const BigInt& psi, std::uint64_t max_steps) {
  const PrefixTarget target = prefix_target(psi);
  PrefixHitReport report;
  report.a0 = a0;
  report.psi = psi;
  report.p = target.p;
  const auto walk = walk_orbit(a0, max_steps, [&](std::uint64_t alpha, const BigInt& a, std::int64_t q) {
    const BigInt via_c = floor_scale(rescale(a, q), target.p);
    const BigInt via_a = target.p >= q ? BigInt(a * pow3(target.p - q)) : floor_div(a, pow3(q - target.p));
    if (via_c != via_a) report.window_disagreements.push_back(alpha);
    if (via_c == psi) report.hits.push_back(alpha);
    return true;
  });
  report.total_steps = walk.steps + 1;
  report.reached_one = walk.reached_one;
  return report;
}

inline PrefixHitReport prefix_hits(unsigned long a0, unsigned long psi, std::uint64_t max_steps = 1'000'000) {
  return prefix_hits(BigInt(a0), BigInt(psi), max_steps);
}

// ---------------------------------------------------------------------------
// Coverage of [1,3) by c_α, α >= 1

struct CoverageReport {
  std::uint64_t bin_count = 0;
  std::uint64_t seed_lo = 0;
  std::uint64_t seed_hi = 0;
  std::vector<bool> hit_bins;
  std::optional<TriadicRational> min_c;
  std::uint64_t values = 0;
  std::uint64_t unterminated_seeds = 0;

  std::uint64_t bins_hit() const {
    return static_cast<std::uint64_t>(std::count(hit_bins.begin(), hit_bins.end(), true));
  }
  double fraction() const { return bin_count == 0 ? 0.0 : static_cast<double>(bins_hit()) / static_cast<double>(bin_count); }

  friend bool operator==(const CoverageReport&, const CoverageReport&) = default;
};

/// Index i with 1 + 2i/B <= a/3^q < 1 + 2(i+1)/B, for a/3^q in [1,3).
inline std::uint64_t coverage_bin(const BigInt& a, std::int64_t q, std::uint64_t bin_count) {
  const BigInt three_q = pow3(q);
  const BigInt i = floor_div((a - three_q) * bin_count, 2 * three_q);
  return i.get_ui();
}

inline CoverageReport coverage(std::uint64_t seed_lo, std::uint64_t seed_hi, std::uint64_t bin_count,
                               std::uint64_t max_steps) {
  if (seed_lo < 1 || seed_lo > seed_hi) throw PreconditionError("coverage requires 1 <= seed_lo <= seed_hi");
  if (bin_count < 1) throw PreconditionError("coverage requires bin_count >= 1");
  CoverageReport r;
  r.bin_count = bin_count;
  r.seed_lo = seed_lo;
  r.seed_hi = seed_hi;
  r.hit_bins.assign(bin_count, false);
  // minimum kept unnormalized as (a, q) until the end
  std::optional<std::pair<BigInt, std::int64_t>> best;
  std::uint64_t best_bin = bin_count;
  for (std::uint64_t seed = seed_lo; seed <= seed_hi; ++seed) {
    const auto walk = walk_orbit(BigInt(seed), max_steps, [&](std::uint64_t alpha, const BigInt& a, std::int64_t q) {
      if (alpha == 0) return true;
      ++r.values;
      const std::uint64_t bin = coverage_bin(a, q, bin_count);
      r.hit_bins[bin] = true;
      if (bin <= best_bin) {
        if (!best || a * pow3(best->second) < best->first * pow3(q)) {
          best = {a, q};
          best_bin = bin;
        }
      }
      return true;
    });
    if (!walk.reached_one) ++r.unterminated_seeds;
  }
  if (best) r.min_c = rescale(best->first, best->second);
  return r;
}

/// Combines reports over adjacent seed ranges; order-independent apart from
/// the seed bounds.
inline CoverageReport merge(const CoverageReport& a, const CoverageReport& b) {
  if (a.bin_count != b.bin_count) throw PreconditionError("cannot merge coverage with different bin counts");
  CoverageReport r = a;
  r.seed_lo = std::min(a.seed_lo, b.seed_lo);
  r.seed_hi = std::max(a.seed_hi, b.seed_hi);
  for (std::size_t i = 0; i < r.hit_bins.size(); ++i) r.hit_bins[i] = a.hit_bins[i] || b.hit_bins[i];
  if (!r.min_c || (b.min_c && *b.min_c < *r.min_c)) r.min_c = b.min_c;
  r.values += b.values;
  r.unterminated_seeds += b.unterminated_seeds;
  return r;
}

// ---------------------------------------------------------------------------
// Property harnesses

using Fields = std::vector<std::pair<std::string, std::string>>;

struct VerificationReport {
  std::string property;
  std::uint64_t trials = 0;
  std::uint64_t violations = 0;
  std::optional<Fields> first_counterexample;

  bool passed() const { return violations == 0; }
  bool vacuous() const { return trials == 0; }

  void record_violation(Fields inputs) {
    if (violations++ == 0) first_counterexample = std::move(inputs);
  }

  friend bool operator==(const VerificationReport&, const VerificationReport&) = default;
};

/// b uniform over numerators in [3^r, 3^{r+1}) for r uniform in [0, max_exp].
inline TriadicRational sample_unit_window(Rng& rng, std::int64_t max_exp = 30) {
  const std::int64_t r = rng.between(0, max_exp);
  const BigInt lo = pow3(r);
  return normalize(lo + rng.below(BigInt(2 * lo)), r);
}

/// b = ξ·3^{-q₀} + t·3^{-(q₀+d)}, d uniform in [1, d_max], t uniform in
/// (0, 3^d) conditioned on 3 ∤ t. Every draw lies in Φ_ξ.
inline TriadicRational sample_phi(Rng& rng, const BigInt& xi, std::int64_t d_max = 12) {
  const std::int64_t q0 = digits3(xi) - 1;
  const std::int64_t d = rng.between(1, d_max);
  const BigInt span = pow3(d);
  BigInt t;
  do {
    t = 1 + rng.below(BigInt(span - 1));
  } while (mpz_divisible_ui_p(t.get_mpz_t(), 3));
  return normalize(xi * span + t, q0 + d);
}

namespace detail {

inline std::string str(std::int64_t v) { return std::to_string(v); }

}  // namespace detail

/// Col₄ⁿ(b) = 3^k Col₃ⁿ(b), k = -[log₃ Col₃ⁿ(b)]: left side by iterating
/// col4_step, right side by iterating col3_step and rescaling.
inline VerificationReport col4_identity_check(std::uint64_t trials, std::uint64_t seed, std::int64_t n_max = 64) {
  VerificationReport rep{"col4_identity", trials, 0, std::nullopt};
  Rng rng(seed, "unit-window-sample");
  for (std::uint64_t t = 0; t < trials; ++t) {
    const TriadicRational b = sample_unit_window(rng);
    const std::int64_t n = rng.between(0, n_max);
    TriadicRational left = b;
    bool ok = true;
    try {
      for (std::int64_t i = 0; i < n; ++i) left = col4_step(left);
    } catch (const InvariantViolation&) {
      ok = false;
    }
    const TriadicRational col3 = col3_iterate(b, static_cast<std::uint64_t>(n));
    const std::int64_t k = -log3_floor(col3);
    const TriadicRational right = col3.times_pow3(k);
    if (!ok || left != right)
      rep.record_violation({{"b", b.to_string()}, {"n", detail::str(n)}, {"col4", left.to_string()},
                            {"rescaled_col3", right.to_string()}, {"k", detail::str(k)}});
  }
  return rep;
}

/// 2^{-n} b <= Col₃ⁿ(b) <= 2^{-n} b + 3^{-q}, exactly, on the same sample
/// stream as col4_identity_check.
inline VerificationReport col3_bound_check(std::uint64_t trials, std::uint64_t seed, std::int64_t n_max = 64) {
  VerificationReport rep{"col3_bound", trials, 0, std::nullopt};
  Rng rng(seed, "unit-window-sample");
  for (std::uint64_t t = 0; t < trials; ++t) {
    const TriadicRational b = sample_unit_window(rng);
    const std::int64_t n = rng.between(0, n_max);
    const TriadicRational value = col3_iterate(b, static_cast<std::uint64_t>(n));
    if (!col3_bound_holds(b, n, value))
      rep.record_violation({{"b", b.to_string()}, {"n", detail::str(n)}, {"col3", value.to_string()}});
  }
  return rep;
}

/// Col₄ maps [1,3) into [1,3).
inline VerificationReport col4_range_check(std::uint64_t trials, std::uint64_t seed) {
  VerificationReport rep{"col4_range", trials, 0, std::nullopt};
  Rng rng(seed, "col4-range");
  for (std::uint64_t t = 0; t < trials; ++t) {
    const TriadicRational b = sample_unit_window(rng);
    bool ok;
    try {
      ok = in_unit_window(col4_step(b));
    } catch (const InvariantViolation&) {
      ok = false;
    }
    if (!ok) rep.record_violation({{"b", b.to_string()}});
  }
  return rep;
}

/// For φ, θ ∈ Φ_ξ the windows [3^{q₀} Col₃ᵐ(φ)] and [3^{q₀} Col₃ᵐ(θ)] agree
/// with each other, with [3^{q₀} φ / 2^m], and with [ξ / 2^m], for every m
/// until the common window is 1; one step later both are 0.
inline VerificationReport window_lemma_check(const BigInt& xi, std::uint64_t trials, std::uint64_t seed,
                                             std::string property = "window_lemma") {
  if (xi < 2) throw PreconditionError("window_lemma_check requires xi >= 2");
  VerificationReport rep{std::move(property), trials, 0, std::nullopt};
  Rng rng(seed, "window-lemma/" + to_decimal(xi));
  const std::int64_t q0 = digits3(xi) - 1;
  for (std::uint64_t t = 0; t < trials; ++t) {
    const TriadicRational phi = sample_phi(rng, xi);
    const TriadicRational theta = (t % 16 == 0) ? phi : sample_phi(rng, xi);
    TriadicRational x = phi;
    TriadicRational y = theta;
    bool ok = floor_scale(phi, q0) == xi && floor_scale(theta, q0) == xi;
    std::int64_t m = 0;
    bool reached_one = false;
    while (ok) {
      ++m;
      x = col3_step(x);
      y = col3_step(y);
      const BigInt wx = floor_scale(x, q0);
      const BigInt wy = floor_scale(y, q0);
      const BigInt long_div = floor_div(phi.numerator(), pow3(phi.denom_exp() - q0) * pow2(m));
      const BigInt halved = floor_div(xi, pow2(m));
      if (reached_one) {
        ok = sgn(wx) == 0 && sgn(wy) == 0;
        break;
      }
      ok = wx == wy && wx == long_div && wx == halved && sgn(wx) > 0;
      reached_one = wx == 1;
    }
    if (!ok)
      rep.record_violation({{"xi", to_decimal(xi)}, {"phi", phi.to_string()}, {"theta", theta.to_string()},
                            {"m", detail::str(m)}});
  }
  return rep;
}

/// Whenever k₁ = -[log₃ Col₃ⁿ(b)] <= q₀ or k₂ = -[log₃(b·2^{-n})] <= q₀:
/// k₁ = k₂, the value depends only on n across all sampled b ∈ Φ_ξ, and
/// Col₄ⁿ(b) = 3^k Col₃ⁿ(b).
inline VerificationReport cor1_check(const BigInt& xi, std::int64_t n_max, std::uint64_t trials, std::uint64_t seed,
                                     std::string property = "cor1") {
  if (xi < 2) throw PreconditionError("cor1_check requires xi >= 2");
  VerificationReport rep{std::move(property), trials, 0, std::nullopt};
  Rng rng(seed, "cor1/" + to_decimal(xi));
  const std::int64_t q0 = digits3(xi) - 1;
  std::vector<std::optional<std::int64_t>> common(static_cast<std::size_t>(n_max) + 1);
  for (std::uint64_t t = 0; t < trials; ++t) {
    const TriadicRational b = sample_phi(rng, xi);
    const BigInt den_b = pow3(b.denom_exp());
    TriadicRational col3 = b;
    TriadicRational col4 = b;
    for (std::int64_t n = 0; n <= n_max; ++n) {
      if (n > 0) {
        col3 = col3_step(col3);
        col4 = col4_step(col4);
      }
      const std::int64_t k1 = -log3_floor(col3);
      const std::int64_t k2 = -floor_log3(b.numerator(), den_b * pow2(n));
      if (k1 > q0 && k2 > q0) continue;
      auto& slot = common[static_cast<std::size_t>(n)];
      const bool consistent = !slot || *slot == k1;
      if (!slot) slot = k1;
      if (k1 != k2 || !consistent || col4 != col3.times_pow3(k1)) {
        rep.record_violation({{"xi", to_decimal(xi)}, {"b", b.to_string()}, {"n", detail::str(n)},
                              {"k1", detail::str(k1)}, {"k2", detail::str(k2)}});
        break;
      }
    }
  }
  return rep;
}

/// Among pairs (n, k), 0 <= n <= n_max, with 1 <= 3^k b 2^{-n} < 3: every n
/// has exactly one k and every k at most two n.
inline VerificationReport cor2_structure_check(std::uint64_t trials, std::uint64_t seed, std::int64_t n_max = 60) {
  VerificationReport rep{"cor2_structure", trials, 0, std::nullopt};
  Rng rng(seed, "cor2");
  const std::int64_t k_lo = -2;
  const std::int64_t k_hi = n_max + 2;
  for (std::uint64_t t = 0; t < trials; ++t) {
    const TriadicRational b = sample_unit_window(rng);
    std::vector<int> per_n(static_cast<std::size_t>(n_max) + 1, 0);
    std::vector<int> per_k(static_cast<std::size_t>(k_hi - k_lo) + 1, 0);
    for (std::int64_t k = k_lo; k <= k_hi; ++k) {
      const TriadicRational v = b.times_pow3(k);
      const BigInt unit = pow3(v.denom_exp());
      for (std::int64_t n = 0; n <= n_max; ++n) {
        const BigInt lower = pow2(n) * unit;
        if (lower <= v.numerator() && v.numerator() < 3 * lower) {
          ++per_n[static_cast<std::size_t>(n)];
          ++per_k[static_cast<std::size_t>(k - k_lo)];
        }
      }
    }
    const bool ok = std::all_of(per_n.begin(), per_n.end(), [](int c) { return c == 1; }) &&
                    std::all_of(per_k.begin(), per_k.end(), [](int c) { return c <= 2; });
    if (!ok) rep.record_violation({{"b", b.to_string()}});
  }
  return rep;
}

/// For each record pair (n, k) and x ∈ (1,3) with frac(k·log2 3) > 1 - log2 x
/// (exactly: 3^k x > 2^n), 1 <= 3^k x 2^{-n} < 3 holds.
inline VerificationReport record_consequence_check(std::uint64_t trials, std::uint64_t seed, std::int64_t k_max = 200) {
  VerificationReport rep{"record_consequence", trials, 0, std::nullopt};
  if (trials == 0) return rep;
  const auto records = record_pairs(k_max);
  Rng rng(seed, "record-consequence");
  for (std::uint64_t t = 0; t < trials; ++t) {
    TriadicRational x;
    do {
      x = sample_unit_window(rng);
    } while (x.numerator() == pow3(x.denom_exp()));
    for (const auto& rec : records) {
      const BigInt lhs = rec.certificate.mid * x.numerator();  // 3^k x 3^r
      const BigInt two_n = pow2(rec.n) * pow3(x.denom_exp());
      if (lhs <= two_n) continue;
      if (!(rec.certificate.holds() && lhs < 3 * two_n)) {
        rep.record_violation({{"x", x.to_string()}, {"k", detail::str(rec.k)}, {"n", detail::str(rec.n)}});
        break;
      }
    }
  }
  return rep;
}

struct PropertyBudget {
  std::uint64_t trials = 1000;
  std::int64_t xi_max = 80;
  std::int64_t cor1_n_max = 16;
};

/// Every registered harness, in a fixed order, with deterministic seeding.
/// The Φ_ξ harnesses run `trials` samples for each ξ in [2, xi_max].
inline std::vector<VerificationReport> run_all_properties(std::uint64_t seed, const PropertyBudget& budget = {}) {
  std::vector<VerificationReport> out;
  out.push_back(col4_identity_check(budget.trials, seed));
  out.push_back(col3_bound_check(budget.trials, seed));
  out.push_back(col4_range_check(budget.trials, seed));

  VerificationReport window{"window_lemma", 0, 0, std::nullopt};
  VerificationReport cor1{"cor1", 0, 0, std::nullopt};
  for (std::int64_t xi = 2; xi <= budget.xi_max; ++xi) {
    for (auto [agg, rep] : {std::pair{&window, window_lemma_check(BigInt(static_cast<long>(xi)), budget.trials, seed)},
                            std::pair{&cor1, cor1_check(BigInt(static_cast<long>(xi)), budget.cor1_n_max,
                                                        budget.trials, seed)}}) {
      agg->trials += rep.trials;
      if (rep.violations > 0 && !agg->first_counterexample) agg->first_counterexample = rep.first_counterexample;
      agg->violations += rep.violations;
    }
  }
  out.push_back(std::move(window));
  out.push_back(std::move(cor1));
  out.push_back(cor2_structure_check(budget.trials, seed));
  out.push_back(record_consequence_check(budget.trials, seed));
  return out;
}

inline bool all_passed(const std::vector<VerificationReport>& reports) {
  return std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.passed(); });
}

}  // namespace tricol
