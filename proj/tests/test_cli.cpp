#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"

using namespace tricol;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args, const std::atomic<bool>* cancel = nullptr) {
  args.insert(args.begin(), "tricol");
  std::ostringstream out, err;
  const int code = cli::run(args, out, err, cancel);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::vector<std::string> split(const std::string& s, char sep = ',') {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

TEST(Cli, OrbitSeven) {
  const auto r = run({"orbit", "7"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = lines(r.out);
  ASSERT_EQ(rows.size(), 13u);
  EXPECT_EQ(rows[0], "alpha,a,q,c_num,c_denom_exp,c_decimal(display-only)");
  EXPECT_EQ(rows[4].substr(0, 14), "3,26,2,26,2,2.");
}

TEST(Cli, OrbitRoundTripsTriadicValues) {
  const auto r = run({"orbit", "27", "--window-p", "2"});
  ASSERT_EQ(r.code, 0);
  const auto rows = lines(r.out);
  EXPECT_EQ(rows[0].substr(rows[0].size() - 7), ",window");
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto f = split(rows[i]);
    ASSERT_EQ(f.size(), 7u);
    const auto c = TriadicRational::parse(f[3] + "/3^" + f[4]);
    EXPECT_EQ(c.to_rational(), ratio(BigInt(f[1]), pow3(std::stol(f[2]))));
    EXPECT_EQ(BigInt(f[6]), floor_scale(c, 2));
  }
}

TEST(Cli, OrbitStepLimit) {
  const auto r = run({"orbit", "27", "--max-steps", "5"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(lines(r.out).back(), "# not terminated after 5 steps");
}

TEST(Cli, OrbitRelationFailureExitsOne) {
  const auto r = run({"orbit", "6"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("alpha = 1"), std::string::npos);
}

TEST(Cli, OrbitJson) {
  const auto r = run({"--format", "json", "orbit", "7"});
  ASSERT_EQ(r.code, 0);
  const auto j = report::Json::parse(r.out);
  EXPECT_EQ(j["a0"], "7");
  EXPECT_EQ(j["records"].size(), 12u);
  EXPECT_EQ(j["records"][3]["a"], "26");
  EXPECT_EQ(j["records"][3]["q"], 2);
}

TEST(Cli, PrefixCount) {
  const auto r = run({"prefix-count", "7", "2"});
  ASSERT_EQ(r.code, 0);
  const auto rows = lines(r.out);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[1], "7,2,0,12,true,5,0;3;5;8;10,");
}

TEST(Cli, Coverage) {
  const auto one = run({"-j", "1", "coverage", "2", "5000", "--bins", "40"});
  const auto four = run({"-j", "4", "coverage", "2", "5000", "--bins", "40"});
  ASSERT_EQ(one.code, 0);
  EXPECT_EQ(one.out, four.out);
  const auto f = split(lines(one.out)[1]);
  EXPECT_EQ(f[4], "40/40");
  EXPECT_EQ(f[5], "1/3^0");
  const auto j = run({"--format", "json", "coverage", "2", "100", "--bins", "10"});
  EXPECT_EQ(report::Json::parse(j.out)["bin_count"], 10);
}

TEST(Cli, ApproxRecords) {
  const auto r = run({"approx-records", "--k-max", "50"});
  ASSERT_EQ(r.code, 0);
  const auto rows = lines(r.out);
  ASSERT_EQ(rows.size(), 7u);
  EXPECT_EQ(rows[0], "k,n,frac_lo,frac_hi");
  EXPECT_EQ(rows[1].substr(0, 4), "1,2,");
  EXPECT_EQ(rows[6].substr(0, 6), "41,65,");
}

TEST(Cli, ApproxSteer) {
  const auto r = run({"approx-steer", "2", "--count", "3"});
  ASSERT_EQ(r.code, 0);
  const auto rows = lines(r.out);
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[1], "2,0,high,1,1,20,27,28");
}

TEST(Cli, VerifyIsDeterministic) {
  const std::vector<std::string> args{"verify", "--trials", "40", "--rng-seed", "7", "--xi-max", "12"};
  const auto a = run(args);
  const auto b = run(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(lines(a.out).size(), 8u);
  const auto j = run({"--format", "json", "verify", "--trials", "10", "--xi-max", "4"});
  EXPECT_EQ(report::Json::parse(j.out).size(), 7u);
}

TEST(Cli, UsageErrors) {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {},
           {"bogus"},
           {"orbit"},
           {"orbit", "0"},
           {"orbit", "-3"},
           {"orbit", "abc"},
           {"prefix-count", "7", "1"},
           {"coverage", "5", "2"},
           {"--format", "xml", "orbit", "7"},
           {"approx-steer", "1"},
       }) {
    const auto r = run(args);
    EXPECT_EQ(r.code, 2) << (args.empty() ? "" : args[0]);
    EXPECT_NE(r.err.find("usage:"), std::string::npos);
  }
}

TEST(Cli, OutputFileAndEnvironment) {
  const auto dir = std::filesystem::temp_directory_path();
  const auto flag_path = (dir / "tricol_cli_flag.csv").string();
  const auto env_path = (dir / "tricol_cli_env.csv").string();
  ASSERT_EQ(run({"--output", flag_path, "orbit", "7"}).code, 0);
  ::setenv("TRICOL_OUTPUT", env_path.c_str(), 1);
  const auto r = run({"orbit", "7"});
  ::unsetenv("TRICOL_OUTPUT");
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  std::ifstream a(flag_path), b(env_path);
  std::stringstream sa, sb;
  sa << a.rdbuf();
  sb << b.rdbuf();
  EXPECT_EQ(sa.str(), run({"orbit", "7"}).out);
  EXPECT_EQ(sa.str(), sb.str());
  std::filesystem::remove(flag_path);
  std::filesystem::remove(env_path);

  ::setenv("TRICOL_PARALLELISM", "0", 1);
  EXPECT_EQ(run({"coverage", "2", "10"}).code, 2);
  EXPECT_EQ(run({"-j", "2", "coverage", "2", "10"}).code, 0);
  ::unsetenv("TRICOL_PARALLELISM");
}

TEST(Cli, CancelledRunExitsThree) {
  std::atomic<bool> cancel{true};
  const auto orbit = run({"orbit", "27"}, &cancel);
  EXPECT_EQ(orbit.code, 3);
  EXPECT_EQ(lines(orbit.out).back(), "# truncated: interrupted");
  const auto cov = run({"coverage", "2", "10000"}, &cancel);
  EXPECT_EQ(cov.code, 3);
  EXPECT_EQ(lines(cov.out).back(), "# truncated: interrupted");
}

TEST(Cli, GlobalOptionsAfterSubcommand) {
  const auto before = run({"--format", "json", "-j", "2", "coverage", "2", "300"});
  const auto after = run({"coverage", "2", "300", "-j", "2", "--format", "json"});
  ASSERT_EQ(after.code, 0) << after.err;
  EXPECT_EQ(before.out, after.out);
}
