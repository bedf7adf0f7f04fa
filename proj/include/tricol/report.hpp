#pragma once

// CSV and JSON emission. Arbitrary-precision integers are written as exact
// decimal strings; machine integers as JSON numbers. JSON objects keep the
// CSV column order.

#include <json.hpp>

#include <ostream>
#include <string>
#include <vector>

#include "analysis.hpp"
#include "diophantine.hpp"
#include "maps.hpp"

namespace tricol::report {

using Json = nlohmann::ordered_json;

inline constexpr const char* kDecimalColumn = "c_decimal(display-only)";

inline std::string join(const std::vector<std::uint64_t>& xs, char sep = ';') {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += sep;
    out += std::to_string(xs[i]);
  }
  return out;
}

inline std::string join(const Fields& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out += ';';
    out += fields[i].first + "=" + fields[i].second;
  }
  return out;
}

// --- orbit ------------------------------------------------------------------

inline void orbit_csv_header(std::ostream& os, bool with_window) {
  os << "alpha,a,q,c_num,c_denom_exp," << kDecimalColumn << (with_window ? ",window" : "") << '\n';
}

inline void orbit_csv_row(std::ostream& os, const OrbitRecord& r) {
  os << r.alpha << ',' << to_decimal(r.a) << ',' << r.q << ',' << to_decimal(r.c.numerator()) << ','
     << r.c.denom_exp() << ',' << r.c.to_decimal_string();
  if (r.window) os << ',' << to_decimal(*r.window);
  os << '\n';
}

inline void orbit_csv(std::ostream& os, const OrbitResult& o) {
  const bool with_window = !o.records.empty() && o.records.front().window.has_value();
  orbit_csv_header(os, with_window);
  for (const auto& r : o.records) orbit_csv_row(os, r);
  if (!o.reached_one && !o.interrupted) os << "# not terminated after " << (o.records.size() - 1) << " steps\n";
}

inline Json to_json(const OrbitRecord& r) {
  Json j;
  j["alpha"] = r.alpha;
  j["a"] = to_decimal(r.a);
  j["q"] = r.q;
  j["c_num"] = to_decimal(r.c.numerator());
  j["c_denom_exp"] = r.c.denom_exp();
  j[kDecimalColumn] = r.c.to_decimal_string();
  if (r.window) j["window"] = to_decimal(*r.window);
  return j;
}

inline Json to_json(const OrbitResult& o) {
  Json j;
  j["a0"] = to_decimal(o.a0);
  j["reached_one"] = o.reached_one;
  j["steps"] = o.records.empty() ? 0 : o.records.size() - 1;
  j["relation_checks"] = o.relation_checks;
  j["relation_failures"] = o.relation_failures;
  Json rows = Json::array();
  for (const auto& r : o.records) rows.push_back(to_json(r));
  j["records"] = std::move(rows);
  return j;
}

// --- prefix hits --------------------------------------------------------------

inline void prefix_csv(std::ostream& os, const PrefixHitReport& r) {
  os << "a0,psi,p,total_steps,reached_one,count,hits,window_disagreements\n"
     << to_decimal(r.a0) << ',' << to_decimal(r.psi) << ',' << r.p << ',' << r.total_steps << ','
     << (r.reached_one ? "true" : "false") << ',' << r.hits.size() << ',' << join(r.hits) << ','
     << join(r.window_disagreements) << '\n';
}

inline Json to_json(const PrefixHitReport& r) {
  Json j;
  j["a0"] = to_decimal(r.a0);
  j["psi"] = to_decimal(r.psi);
  j["p"] = r.p;
  j["total_steps"] = r.total_steps;
  j["reached_one"] = r.reached_one;
  j["count"] = r.hits.size();
  j["hits"] = r.hits;
  j["window_disagreements"] = r.window_disagreements;
  return j;
}

// --- coverage -----------------------------------------------------------------

inline std::string bitmap(const std::vector<bool>& bits) {
  std::string s;
  s.reserve(bits.size());
  for (bool b : bits) s += b ? '1' : '0';
  return s;
}

inline std::string fraction_text(const CoverageReport& r) {
  return std::to_string(r.bins_hit()) + "/" + std::to_string(r.bin_count);
}

inline void coverage_csv(std::ostream& os, const CoverageReport& r) {
  os << "seed_lo,seed_hi,bin_count,bins_hit,fraction,min_c,values,unterminated_seeds,hit_bins\n"
     << r.seed_lo << ',' << r.seed_hi << ',' << r.bin_count << ',' << r.bins_hit() << ',' << fraction_text(r) << ','
     << (r.min_c ? r.min_c->to_string() : "") << ',' << r.values << ',' << r.unterminated_seeds << ','
     << bitmap(r.hit_bins) << '\n';
}

inline Json to_json(const CoverageReport& r) {
  Json j;
  j["seed_lo"] = r.seed_lo;
  j["seed_hi"] = r.seed_hi;
  j["bin_count"] = r.bin_count;
  j["bins_hit"] = r.bins_hit();
  j["fraction"] = fraction_text(r);
  j["min_c"] = r.min_c ? Json(r.min_c->to_string()) : Json(nullptr);
  j["values"] = r.values;
  j["unterminated_seeds"] = r.unterminated_seeds;
  j["hit_bins"] = bitmap(r.hit_bins);
  return j;
}

// --- diophantine tables -------------------------------------------------------

inline void records_csv_header(std::ostream& os) { os << "k,n,frac_lo,frac_hi\n"; }

inline void records_csv_row(std::ostream& os, const ApproxPair& p) {
  os << p.k << ',' << p.n << ',' << (p.frac ? p.frac->lower_decimal() : "") << ','
     << (p.frac ? p.frac->upper_decimal() : "") << '\n';
}

inline Json record_json(const ApproxPair& p) {
  Json j;
  j["k"] = p.k;
  j["n"] = p.n;
  j["frac_lo"] = p.frac ? p.frac->lower_decimal() : "";
  j["frac_hi"] = p.frac ? p.frac->upper_decimal() : "";
  return j;
}

inline void steering_csv_header(std::ostream& os) { os << "psi,p,case,k,n,lhs,mid,rhs\n"; }

inline void steering_csv_row(std::ostream& os, const PrefixTarget& t, const ApproxPair& p) {
  os << to_decimal(t.psi) << ',' << t.p << ',' << to_string(t.case_tag) << ',' << p.k << ',' << p.n << ','
     << to_decimal(p.certificate.lhs) << ',' << to_decimal(p.certificate.mid) << ','
     << to_decimal(p.certificate.rhs) << '\n';
}

inline Json steering_json(const PrefixTarget& t, const ApproxPair& p) {
  Json j;
  j["psi"] = to_decimal(t.psi);
  j["p"] = t.p;
  j["case"] = to_string(t.case_tag);
  j["k"] = p.k;
  j["n"] = p.n;
  j["lhs"] = to_decimal(p.certificate.lhs);
  j["mid"] = to_decimal(p.certificate.mid);
  j["rhs"] = to_decimal(p.certificate.rhs);
  return j;
}

// --- verification -------------------------------------------------------------

inline const char* status(const VerificationReport& r) {
  if (r.vacuous()) return "no-trials";
  return r.passed() ? "pass" : "fail";
}

inline void verification_csv(std::ostream& os, const std::vector<VerificationReport>& reports) {
  os << "property,trials,violations,status,first_counterexample\n";
  for (const auto& r : reports)
    os << r.property << ',' << r.trials << ',' << r.violations << ',' << status(r) << ','
       << (r.first_counterexample ? join(*r.first_counterexample) : "") << '\n';
}

inline Json to_json(const VerificationReport& r) {
  Json j;
  j["property"] = r.property;
  j["trials"] = r.trials;
  j["violations"] = r.violations;
  j["status"] = status(r);
  if (r.first_counterexample) {
    Json ce = Json::object();
    for (const auto& [k, v] : *r.first_counterexample) ce[k] = v;
    j["first_counterexample"] = std::move(ce);
  } else {
    j["first_counterexample"] = nullptr;
  }
  return j;
}

inline Json to_json(const std::vector<VerificationReport>& reports) {
  Json arr = Json::array();
  for (const auto& r : reports) arr.push_back(to_json(r));
  return arr;
}

/// One line per property, for people.
inline std::string to_text(const VerificationReport& r) {
  std::string s = r.property + ": " + status(r) + " (" + std::to_string(r.trials) + " trials, " +
                  std::to_string(r.violations) + " violations)";
  if (r.first_counterexample) s += " first counterexample: " + join(*r.first_counterexample);
  return s;
}

}  // namespace tricol::report
