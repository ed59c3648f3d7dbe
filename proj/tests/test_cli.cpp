#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "qdet/cli.hpp"
#include "support.hpp"

using qdet::testing::data_path;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = qdet::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

bool contains(const std::string& s, const std::string& needle) { return s.find(needle) != std::string::npos; }

const std::string A = data_path("example_a.qmat");
const std::string W = data_path("example_w.qmat");

}  // namespace

TEST(Cli, WeightedDrazinAllRoutesChecked) {
  const Result r = run({"wdrazin", "-i", A, "-w", W, "--route", "all", "--check"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.rfind("4 3\n0 -i 0\n-k -j 0\n-1 -i-k 0\n-1 -i 0\n", 0), 0u) << r.out;
  EXPECT_TRUE(contains(r.out, "% routes.agree = true"));
  EXPECT_TRUE(contains(r.out, "% route.mp_route_U = refused"));
}

TEST(Cli, KeyValueOutput) {
  const Result r = run({"wdrazin", "-i", A, "-w", W, "--emit", "kv", "--check"});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(contains(r.out, "result.rows = 4\n"));
  EXPECT_TRUE(contains(r.out, "entry.3.2 = -i-k\n"));
  EXPECT_TRUE(contains(r.out, "route = via_drazin_U\n"));
  EXPECT_TRUE(contains(r.out, "check.passed = true\n"));
  const Result all = run({"mp", "-i", data_path("identity3.qmat"), "--route", "all", "--check", "--emit", "kv"});
  EXPECT_EQ(all.code, 0);
  EXPECT_TRUE(contains(all.out, "routes.agree = true\n"));
  EXPECT_TRUE(contains(all.out, "check.cdet.passed = true\n"));
}

TEST(Cli, DrazinOfIdentity) {
  const Result r = run({"drazin", "-i", data_path("identity3.qmat"), "--check"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.rfind("3 3\n1 0 0\n0 1 0\n0 0 1\n", 0), 0u);
}

TEST(Cli, Determinant) {
  const Result r = run({"det", "-i", data_path("identity3.qmat"), "--anchor", "c:2", "--emit", "kv"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "det.kind = cdet\ndet.anchor = 2\ndet.value = 1\n");
}

TEST(Cli, GuardRefusal) {
  const Result r = run({"det", "-i", data_path("big9.qmat")});
  EXPECT_EQ(r.code, qdet::cli::refused);
  EXPECT_TRUE(contains(r.err, "exceeds the enumeration guard"));
  EXPECT_EQ(run({"det", "-i", data_path("big9.qmat"), "--max-n", "9"}).code, 0);
  ::setenv("QDET_MAX_N", "9", 1);
  EXPECT_EQ(run({"det", "-i", data_path("big9.qmat")}).code, 0);
  ::unsetenv("QDET_MAX_N");
}

TEST(Cli, InapplicableRouteIsRefused) {
  const Result r = run({"wdrazin", "-i", A, "-w", W, "--route", "mp_route_U"});
  EXPECT_EQ(r.code, qdet::cli::refused);
  EXPECT_TRUE(contains(r.err, "refused"));
}

TEST(Cli, WrongCandidatesFailVerification) {
  for (const char* name : {"candidate_wrong_1.qmat", "candidate_wrong_2.qmat"}) {
    const Result r = run({"verify", "--kind", "wdrazin", "-i", A, "-w", W, "-x", data_path(name), "--emit", "kv"});
    EXPECT_EQ(r.code, qdet::cli::check_failed) << name;
    EXPECT_TRUE(contains(r.out, "check.passed = false\n"));
  }
  const Result ok = run({"verify", "--kind", "wdrazin", "-i", A, "-w", W, "-x", data_path("wdrazin_expected.qmat")});
  EXPECT_EQ(ok.code, 0) << ok.out << ok.err;
}

TEST(Cli, LimitEstimate) {
  const Result r = run({"wdrazin", "-i", A, "-w", W, "--lambda", "1e-8", "--emit", "kv"});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(contains(r.out, "limit.via_aw.distance = "));
  EXPECT_TRUE(contains(r.out, "limit.via_wa.distance = "));
  EXPECT_EQ(run({"wdrazin", "-i", A, "-w", W, "--lambda", "-1"}).code, qdet::cli::refused);
}

TEST(Cli, Info) {
  const Result r = run({"info", "-i", A, "-w", W});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(contains(r.out, "AW.index = 2\n"));
  EXPECT_TRUE(contains(r.out, "WA.index = 1\n"));
  EXPECT_TRUE(contains(r.out, "k = 2\n"));
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, qdet::cli::usage_error);
  EXPECT_EQ(run({"det", "-i", data_path("identity3.qmat"), "--anchor", "x:1"}).code, qdet::cli::usage_error);
  EXPECT_EQ(run({"det", "-i", data_path("identity3.qmat"), "--anchor", "r:4"}).code, qdet::cli::usage_error);
  EXPECT_EQ(run({"det", "-i", A}).code, qdet::cli::usage_error);
  EXPECT_EQ(run({"mp", "-i", A, "--route", "nope"}).code, qdet::cli::usage_error);
  EXPECT_EQ(run({"mp", "-i", "/nonexistent.qmat"}).code, qdet::cli::usage_error);
  EXPECT_EQ(run({"wdrazin", "-i", A}).code, qdet::cli::usage_error);
  EXPECT_EQ(run({"wdrazin", "-i", A, "-w", A}).code, qdet::cli::usage_error);
}

TEST(Cli, ExactModeOnFloatFileIsUsageError) {
  const std::string path = ::testing::TempDir() + "qdet_float.qmat";
  {
    std::ofstream f(path);
    f << "1 1\n0.5\n";
  }
  EXPECT_EQ(run({"mp", "-i", path, "--mode", "exact"}).code, qdet::cli::usage_error);
  const Result r = run({"mp", "-i", path});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("1 1\n2.0\n", 0), 0u) << r.out;
}
