#pragma once

// The tricol command-line front end. run() is separate from main() so the
// test suite can drive it with in-memory streams.

#include <CLI11.hpp>

#include <atomic>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "tricol.hpp"
#include "tricol/report.hpp"

namespace tricol::cli {

enum ExitCode : int { kOk = 0, kViolation = 1, kUsage = 2, kAborted = 3 };

inline constexpr const char* kSynopsis =
    "usage: tricol [--format csv|json] [--output PATH] [-j N] <command> ...\n"
    "  orbit <a0> [--max-steps N] [--window-p P]\n"
    "  prefix-count <a0> <psi> [--max-steps N]\n"
    "  coverage <seed-lo> <seed-hi> [--bins B] [--max-steps N]\n"
    "  approx-records [--k-max K]\n"
    "  approx-steer <psi> [--count C] [--k-max K]\n"
    "  verify [--trials T] [--rng-seed S] [--xi-max X]\n";

struct RunConfig {
  std::string command;
  std::string format = "csv";
  std::optional<std::string> output;
  std::optional<unsigned> parallelism;

  std::string a0;
  std::string psi;
  std::uint64_t seed_lo = 0;
  std::uint64_t seed_hi = 0;
  std::uint64_t bins = 200;
  std::uint64_t max_steps = 1'000'000;
  std::optional<std::int64_t> window_p;
  std::int64_t k_max = 0;
  std::uint64_t count = 5;
  std::uint64_t trials = 1000;
  std::uint64_t rng_seed = 0;
  std::int64_t xi_max = 80;
};

namespace detail {

inline BigInt parse_positive(const std::string& text, const char* what) {
  if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos)
    throw ParseError(std::string(what) + " must be a positive decimal integer, got '" + text + "'");
  BigInt v(text, 10);
  if (v < 1) throw ParseError(std::string(what) + " must be positive");
  return v;
}

inline std::optional<std::string> env(const char* name) {
  const char* v = std::getenv(name);
  if (v == nullptr || *v == '\0') return std::nullopt;
  return std::string(v);
}

inline int usage_error(std::ostream& err, const std::string& message) {
  err << "tricol: " << message << '\n' << kSynopsis;
  return kUsage;
}

inline int run_command(const RunConfig& cfg, std::ostream& out, std::ostream& err,
                       const std::atomic<bool>* cancel) {
  const bool json = cfg.format == "json";
  const unsigned workers = cfg.parallelism.value_or(default_parallelism());

  if (cfg.command == "orbit") {
    OrbitOptions opt;
    opt.max_steps = cfg.max_steps;
    opt.window_exp = cfg.window_p;
    opt.cancel = cancel;
    const auto result = orbit(parse_positive(cfg.a0, "a0"), opt);
    if (json) {
      out << report::to_json(result).dump(2) << '\n';
    } else {
      report::orbit_csv(out, result);
    }
    if (result.interrupted) {
      if (!json) out << "# truncated: interrupted\n";
      return kAborted;
    }
    if (!result.relation_failures.empty()) {
      err << "tricol: c_{alpha+1} = Col4(c_alpha) fails at alpha = " << report::join(result.relation_failures)
          << '\n';
      return kViolation;
    }
    return kOk;
  }

  if (cfg.command == "prefix-count") {
    const BigInt psi = parse_positive(cfg.psi, "psi");
    if (psi < 2) throw PreconditionError("psi must be at least 2");
    const auto rep = prefix_hits(parse_positive(cfg.a0, "a0"), psi, cfg.max_steps);
    if (json) {
      out << report::to_json(rep).dump(2) << '\n';
    } else {
      report::prefix_csv(out, rep);
    }
    return rep.window_disagreements.empty() ? kOk : kViolation;
  }

  if (cfg.command == "coverage") {
    if (cfg.seed_lo < 1 || cfg.seed_lo > cfg.seed_hi) throw PreconditionError("need 1 <= seed-lo <= seed-hi");
    if (cfg.bins < 1) throw PreconditionError("--bins must be positive");
    try {
      const auto rep = parallel_coverage(cfg.seed_lo, cfg.seed_hi, cfg.bins, cfg.max_steps, workers, cancel);
      if (json) {
        out << report::to_json(rep).dump(2) << '\n';
      } else {
        report::coverage_csv(out, rep);
      }
    } catch (const Cancelled&) {
      if (!json) out << "# truncated: interrupted\n";
      return kAborted;
    }
    return kOk;
  }

  if (cfg.command == "approx-records") {
    const auto pairs = record_pairs(cfg.k_max > 0 ? cfg.k_max : 50);
    if (json) {
      report::Json arr = report::Json::array();
      for (const auto& p : pairs) arr.push_back(report::record_json(p));
      out << arr.dump(2) << '\n';
    } else {
      report::records_csv_header(out);
      for (const auto& p : pairs) report::records_csv_row(out, p);
    }
    return kOk;
  }

  if (cfg.command == "approx-steer") {
    const BigInt psi = parse_positive(cfg.psi, "psi");
    if (psi < 2) throw PreconditionError("psi must be at least 2");
    if (cfg.count < 1) throw PreconditionError("--count must be positive");
    const auto target = prefix_target(psi);
    const auto pairs = steering_pairs(target, cfg.count, cfg.k_max > 0 ? cfg.k_max : 5000);
    if (json) {
      report::Json arr = report::Json::array();
      for (const auto& p : pairs) arr.push_back(report::steering_json(target, p));
      out << arr.dump(2) << '\n';
    } else {
      report::steering_csv_header(out);
      for (const auto& p : pairs) report::steering_csv_row(out, target, p);
    }
    if (pairs.size() < cfg.count)
      err << "tricol: found " << pairs.size() << " of " << cfg.count << " requested pairs\n";
    return kOk;
  }

  if (cfg.command == "verify") {
    PropertyBudget budget;
    budget.trials = cfg.trials;
    budget.xi_max = cfg.xi_max;
    const auto reports = run_all_properties(cfg.rng_seed, budget);
    if (json) {
      out << report::to_json(reports).dump(2) << '\n';
    } else {
      report::verification_csv(out, reports);
    }
    for (const auto& r : reports) err << report::to_text(r) << '\n';
    return all_passed(reports) ? kOk : kViolation;
  }

  throw PreconditionError("unknown command");
}

}  // namespace detail

/// Parses args (args[0] is the program name) and runs the selected command.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
               const std::atomic<bool>* cancel = nullptr) {
  RunConfig cfg;
  CLI::App app{"Exact triadic Collatz machinery", "tricol"};
  app.require_subcommand(1);
  app.add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--output", cfg.output, "output file (default stdout; env TRICOL_OUTPUT)");
  app.add_option("-j,--parallelism", cfg.parallelism, "worker threads (env TRICOL_PARALLELISM)")
      ->check(CLI::PositiveNumber);

  auto* orbit_cmd = app.add_subcommand("orbit", "Col2 orbit with exact q and c");
  orbit_cmd->add_option("a0", cfg.a0, "starting value")->required();
  orbit_cmd->add_option("--max-steps", cfg.max_steps)->check(CLI::PositiveNumber);
  orbit_cmd->add_option("--window-p", cfg.window_p, "also emit [3^p c]");

  auto* prefix_cmd = app.add_subcommand("prefix-count", "steps whose leading base-3 digits equal psi");
  prefix_cmd->add_option("a0", cfg.a0)->required();
  prefix_cmd->add_option("psi", cfg.psi)->required();
  prefix_cmd->add_option("--max-steps", cfg.max_steps)->check(CLI::PositiveNumber);

  auto* coverage_cmd = app.add_subcommand("coverage", "bin c values of a seed range over [1,3)");
  coverage_cmd->add_option("seed-lo", cfg.seed_lo)->required()->check(CLI::PositiveNumber);
  coverage_cmd->add_option("seed-hi", cfg.seed_hi)->required()->check(CLI::PositiveNumber);
  coverage_cmd->add_option("--bins", cfg.bins)->check(CLI::PositiveNumber);
  coverage_cmd->add_option("--max-steps", cfg.max_steps)->check(CLI::PositiveNumber);

  auto* records_cmd = app.add_subcommand("approx-records", "record pairs (k, n) for log2 3");
  records_cmd->add_option("--k-max", cfg.k_max)->check(CLI::PositiveNumber);

  auto* steer_cmd = app.add_subcommand("approx-steer", "certified steering pairs for a prefix psi");
  steer_cmd->add_option("psi", cfg.psi)->required();
  steer_cmd->add_option("--count", cfg.count)->check(CLI::PositiveNumber);
  steer_cmd->add_option("--k-max", cfg.k_max)->check(CLI::PositiveNumber);

  auto* verify_cmd = app.add_subcommand("verify", "run every property harness");
  verify_cmd->add_option("--trials", cfg.trials, "trials per property (per xi for window harnesses)");
  verify_cmd->add_option("--rng-seed", cfg.rng_seed);
  verify_cmd->add_option("--xi-max", cfg.xi_max)->check(CLI::Range(2, 100000));

  // global options may also follow the subcommand
  for (auto* sub : app.get_subcommands([](CLI::App*) { return true; })) sub->fallthrough();

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    return detail::usage_error(err, e.what());
  }
  cfg.command = app.get_subcommands().front()->get_name();

  if (!cfg.output) cfg.output = detail::env("TRICOL_OUTPUT");
  if (!cfg.parallelism) {
    if (auto p = detail::env("TRICOL_PARALLELISM")) {
      try {
        const long v = std::stol(*p);
        if (v < 1) throw std::invalid_argument("non-positive");
        cfg.parallelism = static_cast<unsigned>(v);
      } catch (const std::exception&) {
        return detail::usage_error(err, "TRICOL_PARALLELISM must be a positive integer");
      }
    }
  }

  std::ofstream file;
  if (cfg.output && *cfg.output != "-") {
    file.open(*cfg.output);
    if (!file) return detail::usage_error(err, "cannot open output file " + *cfg.output);
  }
  std::ostream& sink = file.is_open() ? static_cast<std::ostream&>(file) : out;

  try {
    return detail::run_command(cfg, sink, err, cancel);
  } catch (const ResourceLimitError& e) {
    err << "tricol: resource guard: " << e.what() << '\n';
    return kAborted;
  } catch (const InvariantViolation& e) {
    err << "tricol: violation: " << e.what() << '\n';
    return kViolation;
  } catch (const PreconditionError& e) {
    return detail::usage_error(err, e.what());
  }
}

}  // namespace tricol::cli
