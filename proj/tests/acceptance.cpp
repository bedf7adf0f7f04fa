// Acceptance checks. `tricol_acceptance <n>` runs criterion n, no argument
// runs all of them. One [PASS]/[FAIL] line per criterion; exit status is
// nonzero if any criterion fails.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <tricol.hpp>
#include <tricol/report.hpp>

using namespace tricol;

namespace {

// Sample sizes and thresholds.
constexpr std::uint64_t kOrbitSeedMax = 100'000;
constexpr std::uint64_t kShiftSeedMax = 10'000;
constexpr std::uint64_t kMaxSteps = 1'000'000;
constexpr std::uint64_t kIdentityTrials = 10'000;
constexpr std::int64_t kIdentityNMax = 64;
constexpr std::uint64_t kWindowTrials = 1'000;
constexpr std::int64_t kXiMax = 80;
constexpr std::uint64_t kCor2Trials = 1'000;
constexpr std::int64_t kCor2NMax = 60;
constexpr std::int64_t kRecordKMax = 50;
constexpr std::int64_t kSteerKMax = 5000;
constexpr long kSteerPsiMax = 30;
constexpr std::uint64_t kCoverageSeedHi = 100'000;
constexpr std::uint64_t kCoverageBins = 200;
constexpr double kCoverageMinFraction = 0.99;
constexpr std::uint64_t kRngSeed = 20'240'601;

struct Outcome {
  bool pass;
  std::string detail;
  std::vector<std::string> notes;
};

// --- 1, 2: orbit relations ----------------------------------------------------

struct OrbitTally {
  std::uint64_t seeds = 0;
  std::uint64_t unterminated = 0;
  std::uint64_t checks = 0;
  std::uint64_t violations = 0;
  std::uint64_t violating_seeds = 0;
  std::uint64_t first_seed = 0;
  std::uint64_t first_alpha = 0;
  // the same relation, skipping steps with 3 | a_alpha
  std::uint64_t restricted_violations = 0;
  std::uint64_t restricted_checks = 0;
};

OrbitTally add(OrbitTally a, const OrbitTally& b) {
  if (a.violations == 0 && b.violations > 0) {
    a.first_seed = b.first_seed;
    a.first_alpha = b.first_alpha;
  }
  a.seeds += b.seeds;
  a.unterminated += b.unterminated;
  a.checks += b.checks;
  a.violations += b.violations;
  a.violating_seeds += b.violating_seeds;
  a.restricted_violations += b.restricted_violations;
  a.restricted_checks += b.restricted_checks;
  return a;
}

template <class PerSeed>
OrbitTally sweep(std::uint64_t hi, PerSeed per_seed) {
  auto parts = parallel_chunks(1, hi, 2048, default_parallelism(), [&](std::uint64_t lo, std::uint64_t top) {
    OrbitTally t;
    for (std::uint64_t a0 = lo; a0 <= top; ++a0) per_seed(a0, t);
    return t;
  });
  OrbitTally total;
  for (auto& p : parts) total = add(total, *p);
  return total;
}

void note_violation(OrbitTally& t, std::uint64_t a0, std::uint64_t alpha, bool& seed_flagged) {
  if (t.violations++ == 0) {
    t.first_seed = a0;
    t.first_alpha = alpha;
  }
  if (!seed_flagged) ++t.violating_seeds;
  seed_flagged = true;
}

std::string tally_text(const OrbitTally& t) {
  std::ostringstream os;
  os << t.seeds << " seeds, " << t.unterminated << " unterminated, " << t.checks << " checks, " << t.violations
     << " violations in " << t.violating_seeds << " seeds";
  if (t.violations) os << " (first: a0=" << t.first_seed << " alpha=" << t.first_alpha << ")";
  return os.str();
}

Outcome criterion1() {
  const auto t = sweep(kOrbitSeedMax, [](std::uint64_t a0, OrbitTally& t) {
    OrbitOptions opt;
    opt.max_steps = kMaxSteps;
    const auto o = orbit(BigInt(static_cast<unsigned long>(a0)), opt);
    ++t.seeds;
    if (!o.reached_one) ++t.unterminated;
    t.checks += o.relation_checks;
    bool flagged = false;
    for (auto alpha : o.relation_failures) note_violation(t, a0, alpha, flagged);
    for (std::size_t alpha = 0; alpha + 1 < o.records.size(); ++alpha) {
      if ((alpha == 0 && a0 % 3 == 0) || o.records[alpha].a % 3 == 0) continue;
      ++t.restricted_checks;
      if (col4_step(o.records[alpha].c) != o.records[alpha + 1].c) ++t.restricted_violations;
    }
  });
  Outcome out{t.unterminated == 0 && t.violations == 0, tally_text(t), {}};
  out.notes.push_back("restricted to steps with 3 not dividing a_alpha: " + std::to_string(t.restricted_checks) +
                      " checks, " + std::to_string(t.restricted_violations) + " violations");
  return out;
}

Outcome criterion2() {
  const auto t = sweep(kShiftSeedMax, [](std::uint64_t a0, OrbitTally& t) {
    const auto o = orbit(BigInt(static_cast<unsigned long>(a0)));
    ++t.seeds;
    if (!o.reached_one) ++t.unterminated;
    bool flagged = false;
    if (o.records.size() >= 2) {
      TriadicRational b = o.records[1].c;
      for (std::size_t alpha = 1; alpha < o.records.size(); ++alpha) {
        ++t.checks;
        if (b.numerator() != o.records[alpha].a) note_violation(t, a0, alpha, flagged);
        if (alpha + 1 < o.records.size()) b = col3_step(b);
      }
    }
    // shift started at the first alpha >= 1 with 3 not dividing a_alpha
    std::size_t start = 1;
    while (start < o.records.size() && o.records[start].a % 3 == 0) ++start;
    if (start < o.records.size()) {
      TriadicRational b = o.records[start].c;
      for (std::size_t alpha = start; alpha < o.records.size(); ++alpha) {
        ++t.restricted_checks;
        if (b.numerator() != o.records[alpha].a) ++t.restricted_violations;
        if (alpha + 1 < o.records.size()) b = col3_step(b);
      }
    }
  });
  Outcome out{t.unterminated == 0 && t.violations == 0, tally_text(t), {}};
  out.notes.push_back("started from the first alpha >= 1 with 3 not dividing a_alpha: " +
                      std::to_string(t.restricted_checks) + " checks, " +
                      std::to_string(t.restricted_violations) + " violations");
  return out;
}

// --- 3 to 6: property harnesses ---------------------------------------------

Outcome from_report(const VerificationReport& r, std::uint64_t expected_trials) {
  return {r.trials == expected_trials && r.passed(), report::to_text(r), {}};
}

VerificationReport window_lemma_all() {
  VerificationReport agg{"window_lemma", 0, 0, std::nullopt};
  for (long xi = 2; xi <= kXiMax; ++xi) {
    const auto r = window_lemma_check(BigInt(xi), kWindowTrials, kRngSeed);
    agg.trials += r.trials;
    if (r.violations && !agg.first_counterexample) agg.first_counterexample = r.first_counterexample;
    agg.violations += r.violations;
  }
  return agg;
}

Outcome criterion3() {
  return from_report(col4_identity_check(kIdentityTrials, kRngSeed, kIdentityNMax), kIdentityTrials);
}

Outcome criterion4() {
  return from_report(col3_bound_check(kIdentityTrials, kRngSeed, kIdentityNMax), kIdentityTrials);
}

Outcome criterion5() { return from_report(window_lemma_all(), kWindowTrials * (kXiMax - 1)); }

Outcome criterion6() { return from_report(cor2_structure_check(kCor2Trials, kRngSeed, kCor2NMax), kCor2Trials); }

// --- 7, 8: Diophantine tables ---------------------------------------------------

std::string records_text() {
  std::ostringstream os;
  report::records_csv_header(os);
  for (const auto& p : record_pairs(kRecordKMax)) report::records_csv_row(os, p);
  return os.str();
}

Outcome criterion7() {
  const std::vector<std::int64_t> want_k{1, 3, 5, 17, 29, 41};
  const std::vector<std::int64_t> want_n{2, 5, 8, 27, 46, 65};
  const auto pairs = record_pairs(kRecordKMax);
  bool ok = pairs.size() == want_k.size();
  std::string ks;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto& p = pairs[i];
    ks += (i ? "," : "") + std::to_string(p.k) + ":" + std::to_string(p.n);
    if (i < want_k.size()) ok = ok && p.k == want_k[i] && p.n == want_n[i];
    // independent certificate
    BigInt three_k, two_lo, two_hi;
    mpz_ui_pow_ui(three_k.get_mpz_t(), 3, static_cast<unsigned long>(p.k));
    mpz_ui_pow_ui(two_lo.get_mpz_t(), 2, static_cast<unsigned long>(p.n - 1));
    two_hi = 2 * two_lo;
    ok = ok && two_lo < three_k && three_k < two_hi && p.certificate.holds();
  }
  return {ok, "k:n = " + ks, {}};
}

std::string steering_text() {
  std::ostringstream os;
  report::steering_csv_header(os);
  for (long psi = 2; psi <= kSteerPsiMax; ++psi) {
    const auto t = prefix_target(psi);
    for (const auto& p : steering_pairs(t, 3, kSteerKMax)) report::steering_csv_row(os, t, p);
  }
  return os.str();
}

Outcome criterion8() {
  bool ok = true;
  std::uint64_t total = 0;
  std::string missing;
  for (long psi = 2; psi <= kSteerPsiMax; ++psi) {
    const auto t = prefix_target(psi);
    const auto pairs = steering_pairs(t, 3, kSteerKMax);
    if (pairs.empty()) {
      ok = false;
      missing += " " + std::to_string(psi);
    }
    // p and case recomputed here from the digits of psi
    long p = 0;
    for (long v = psi; v >= 3; v /= 3) ++p;
    long three_p = 1;
    for (long i = 0; i < p; ++i) three_p *= 3;
    const bool high = psi >= 2 * three_p;
    for (const auto& pair : pairs) {
      ++total;
      BigInt num, den;
      mpz_ui_pow_ui(num.get_mpz_t(), 3, static_cast<unsigned long>(pair.k + p + (high ? 1 : 0)));
      mpz_ui_pow_ui(den.get_mpz_t(), 2, static_cast<unsigned long>(pair.n + (high ? 1 : 0)));
      const BigRational value = ratio(num, den);
      const BigRational third(1, 3);
      ok = ok && pair.k >= 1 && pair.k <= kSteerKMax && BigRational(psi) - third < value &&
           value < BigRational(psi) + third && pair.certificate.holds();
    }
  }
  return {ok, std::to_string(total) + " certified pairs for psi in [2," + std::to_string(kSteerPsiMax) + "]" +
                  (missing.empty() ? "" : ", none for:" + missing),
          {}};
}

// --- 9, 10: orbit statistics ----------------------------------------------------

std::string prefix_text() {
  std::ostringstream os;
  report::prefix_csv(os, prefix_hits(7, 2));
  return os.str();
}

Outcome criterion9() {
  const auto r = prefix_hits(7, 2);
  const bool ok = r.hits == std::vector<std::uint64_t>{0, 3, 5, 8, 10} && r.window_disagreements.empty();
  return {ok, "count " + std::to_string(r.hits.size()) + ", hits {" + report::join(r.hits, ',') + "}", {}};
}

std::string coverage_text(unsigned workers) {
  std::ostringstream os;
  report::coverage_csv(os, parallel_coverage(2, kCoverageSeedHi, kCoverageBins, kMaxSteps, workers));
  return os.str();
}

Outcome criterion10() {
  const auto r = parallel_coverage(2, kCoverageSeedHi, kCoverageBins, kMaxSteps, default_parallelism());
  const bool ok = r.fraction() >= kCoverageMinFraction && r.min_c && *r.min_c == TriadicRational(BigInt(1)) &&
                  r.unterminated_seeds == 0;
  return {ok,
          "bins hit " + std::to_string(r.bins_hit()) + "/" + std::to_string(r.bin_count) + ", minC " +
              (r.min_c ? r.min_c->to_string() : "none") + ", " + std::to_string(r.values) + " values",
          {}};
}

// --- 11: determinism --------------------------------------------------------------

std::string harness_text() {
  std::vector<VerificationReport> reps{col4_identity_check(kIdentityTrials, kRngSeed, kIdentityNMax),
                                       col3_bound_check(kIdentityTrials, kRngSeed, kIdentityNMax),
                                       window_lemma_all(), cor2_structure_check(kCor2Trials, kRngSeed, kCor2NMax)};
  std::ostringstream os;
  report::verification_csv(os, reps);
  os << report::to_json(reps).dump();
  return os.str();
}

Outcome criterion11() {
  std::vector<std::string> differing;
  const std::vector<std::pair<const char*, std::function<std::string()>>> reruns{
      {"harnesses", harness_text}, {"records", records_text}, {"steering", steering_text}, {"prefix", prefix_text}};
  for (const auto& [name, fn] : reruns)
    if (fn() != fn()) differing.push_back(name);
  const std::string c1 = coverage_text(1);
  for (unsigned w : {4u, 8u})
    if (coverage_text(w) != c1) differing.push_back("coverage -j" + std::to_string(w));
  std::string detail = "reports compared byte for byte; coverage at parallelism 1, 4, 8";
  for (const auto& d : differing) detail += "; differs: " + d;
  return {differing.empty(), detail, {}};
}

struct Criterion {
  const char* name;
  Outcome (*fn)();
};

const Criterion kCriteria[] = {
    {"orbit fidelity", criterion1},        {"digit shift", criterion2},
    {"Col4 identity", criterion3},         {"Col3 bound", criterion4},
    {"window lemma", criterion5},          {"cor2 structure", criterion6},
    {"record pairs", criterion7},          {"steering pairs", criterion8},
    {"prefix hits", criterion9},           {"coverage", criterion10},
    {"determinism", criterion11},
};

bool run_one(int n) {
  const auto& c = kCriteria[n - 1];
  const auto start = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = c.fn();
  } catch (const std::exception& e) {
    out = {false, std::string("exception: ") + e.what(), {}};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  char time_buf[32];
  std::snprintf(time_buf, sizeof time_buf, "%.1fs", secs);
  std::cout << (out.pass ? "[PASS]" : "[FAIL]") << " C" << n << " " << c.name << ": " << out.detail << " ["
            << time_buf << "]\n";
  for (const auto& note : out.notes) std::cout << "       note: " << note << '\n';
  std::cout.flush();
  return out.pass;
}

}  // namespace

int main(int argc, char** argv) {
  constexpr int count = static_cast<int>(std::size(kCriteria));
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) {
    const int n = std::atoi(argv[i]);
    if (n < 1 || n > count) {
      std::cerr << "usage: tricol_acceptance [1-" << count << "]...\n";
      return 2;
    }
    selected.push_back(n);
  }
  if (selected.empty())
    for (int n = 1; n <= count; ++n) selected.push_back(n);
  bool all = true;
  for (int n : selected) all = run_one(n) && all;
  return all ? 0 : 1;
}
