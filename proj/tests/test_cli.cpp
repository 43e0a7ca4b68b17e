#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>

#include <json.hpp>

#include "hx/cli.hpp"
#include "hx/hg_io.hpp"
#include "test_support.hpp"

namespace fs = std::filesystem;
using hx::dispatch;

namespace {

struct CliRun {
  int code = -1;
  std::string out, err;
};

CliRun run(std::vector<std::string> args) {
  args.insert(args.begin(), "hx");
  std::ostringstream out, err;
  CliRun r;
  r.code = dispatch(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("hx_test_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    hx::write_text_file(dir_ / "k3.hg", "3 2 3\n0 1\n0 2\n1 2\n");
    hx::write_text_file(dir_ / "bip.hg", "4 2 4\n0 2\n0 3\n1 2\n1 3\n");
    hx::write_text_file(dir_ / "path.hg", "4 2 2\n0 2\n1 3\n");
    hx::write_text_file(dir_ / "pair.hg", "6 4 2\n0 1 2 3\n0 1 4 5\n");
    hx::write_text_file(dir_ / "close.hg", "5 4 2\n0 1 2 3\n0 1 2 4\n");
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string p(const std::string& name) const { return (dir_ / name).string(); }
  fs::path dir_;
};

nlohmann::json error_of(const CliRun& r) {
  const std::string first = r.err.substr(0, r.err.find('\n'));
  return nlohmann::json::parse(first);
}

}  // namespace

TEST_F(Cli, NoArgumentsIsUsageError) {
  const CliRun r = run({});
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(error_of(r)["error"]["kind"], "UsageError");
}

TEST_F(Cli, HelpAndVersion) {
  EXPECT_EQ(run({"--help"}).code, 0);
  const CliRun v = run({"--version"});
  EXPECT_EQ(v.code, 0);
  EXPECT_EQ(v.out, "hx 0.1.0\n");
}

TEST_F(Cli, VerifyExitCodes) {
  const CliRun bad = run({"verify", "--property", "cancellative", "--t", "1", p("k3.hg")});
  EXPECT_EQ(bad.code, 1);
  const auto doc = nlohmann::json::parse(bad.out);
  EXPECT_FALSE(doc["holds"].get<bool>());
  EXPECT_FALSE(doc["witness"].is_null());
  EXPECT_EQ(doc["hx"]["version"], "0.1.0");

  const CliRun good = run({"verify", "--property", "cancellative", "--t", "1", p("bip.hg")});
  EXPECT_EQ(good.code, 0);
  EXPECT_TRUE(nlohmann::json::parse(good.out)["holds"].get<bool>());

  // sharing k vertices keeps the union at 6 > 2r-k-1; sharing k+1 does not
  EXPECT_EQ(run({"verify", "--property", "ell-minus", "--k", "2", "--e", "3", p("pair.hg")}).code, 0);
  EXPECT_EQ(run({"verify", "--property", "ell-minus", "--k", "2", "--e", "3", p("close.hg")}).code, 1);
  EXPECT_EQ(run({"verify", "--property", "ve-free", "--v", "5", "--e", "2", p("pair.hg")}).code, 0);
}

TEST_F(Cli, ModuleErrorsMapToExitTwo) {
  const CliRun r = run({"verify", "--property", "ve-free", "--v", "1", "--e", "2", p("k3.hg")});
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(error_of(r)["error"]["kind"], "BadParameters");
  hx::write_text_file(dir_ / "broken.hg", "3 2 1\n0 1");
  const CliRun f = run({"verify", "--property", "cancellative", "--t", "1", p("broken.hg")});
  EXPECT_EQ(f.code, 2);
  EXPECT_EQ(error_of(f)["error"]["kind"], "FormatViolation");
  const CliRun u = run({"search", "--kind", "nope", "--t", "1", "--n", "4", "--r", "2"});
  EXPECT_EQ(u.code, 2);
  const CliRun big = run({"search", "--kind", "cancellative", "--t", "1", "--n", "12", "--r", "3"});
  EXPECT_EQ(big.code, 2);
  EXPECT_EQ(error_of(big)["error"]["kind"], "TooManyCandidates");
}

TEST_F(Cli, BoundsContainsTheLimitRow) {
  const CliRun r = run({"bounds", "--t", "2", "--k", "2", "--n", "100"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("# hx 0.1.0 seed=0 config=", 0), 0U);
  EXPECT_NE(r.out.find("\ncancellative_limit,cancellative-limit,1,6,"), std::string::npos);
  EXPECT_NE(r.out.find("\nc2_upper,two-cancellative-upper,1650,1,"), std::string::npos);
}

TEST_F(Cli, SearchWritesResultAndWitness) {
  const CliRun r = run({"search", "--kind", "cancellative", "--t", "1", "--n", "5", "--r", "2", "--oracle", "--out",
                     p("result.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = nlohmann::json::parse(hx::read_text_file(dir_ / "result.json"));
  EXPECT_EQ(doc["optimum"], 6);
  EXPECT_EQ(doc["status"], "proved");
  EXPECT_EQ(doc["oracle"], 6);
  EXPECT_EQ(doc["witness_file"], "result.witness.hg");
  std::vector<std::string> comments;
  const hx::Hypergraph w = hx::read_hypergraph(dir_ / "result.witness.hg", {}, &comments);
  EXPECT_EQ(w.size(), 6U);
  ASSERT_FALSE(comments.empty());
  EXPECT_NE(comments[0].find("seed=0"), std::string::npos);
}

TEST_F(Cli, PackAndVerifyInducedPacking) {
  const CliRun r = run({"pack", "--template", p("path.hg"), "--n", "16", "--k", "2", "--e", "4", "--seed", "3",
                     "--diagnostics", "--out", p("packing.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = nlohmann::json::parse(hx::read_text_file(dir_ / "packing.json"));
  EXPECT_FALSE(doc["copies"].empty());
  EXPECT_TRUE(doc.contains("diagnostics"));
  EXPECT_EQ(doc["hx"]["seed"], 3);
  EXPECT_EQ(run({"verify", "--property", "induced-packing", "--k", "2", p("packing.json")}).code, 0);
}

TEST_F(Cli, ConstructWritesAllArtifacts) {
  const CliRun r = run({"construct", "cancellative", "--t", "2", "--k", "2", "--n", "25", "--m0", "8", "--seed", "2",
                     "--deterministic", "--out", p("run")});
  ASSERT_EQ(r.code, 0) << r.err;
  for (const char* f : {"G.hg", "F.hg", "shadow.hg", "packing.json", "H.hg", "report.json", "manifest.json"}) {
    EXPECT_TRUE(fs::exists(dir_ / "run" / f)) << f;
  }
  const auto report = nlohmann::json::parse(hx::read_text_file(dir_ / "run" / "report.json"));
  EXPECT_EQ(report["hx"]["seed"], 2);
  EXPECT_EQ(report["elapsed_ms"], 0);
  EXPECT_EQ(run({"verify", "--property", "cancellative", "--t", "2", p("run/H.hg")}).code, 0);
  EXPECT_EQ(run({"certify", "--t", "2", "--k", "2", p("run/H.hg")}).code, 0);
  EXPECT_EQ(run({"construct", "cancellative", "--t", "2", "--k", "2", "--n", "25", "--out", p("x")}).code, 2);
}

TEST_F(Cli, DeterministicRunsAreByteIdentical) {
  const std::vector<std::vector<std::string>> commands{
      {"verify", "--property", "cancellative", "--t", "1", p("k3.hg"), "--deterministic"},
      {"search", "--kind", "union-free", "--t", "2", "--n", "5", "--r", "2", "--deterministic"},
      {"pack", "--template", p("path.hg"), "--n", "20", "--k", "2", "--e", "4", "--deterministic"},
      {"bounds", "--t", "3", "--k", "2", "--n", "50", "--deterministic"},
      {"certify", "--t", "2", "--k", "2", p("pair.hg"), "--deterministic"},
  };
  for (const auto& c : commands) {
    const CliRun a = run(c);
    const CliRun b = run(c);
    EXPECT_EQ(a.code, b.code);
    EXPECT_EQ(a.out, b.out) << c[0];
    EXPECT_FALSE(a.out.empty());
  }
}

TEST_F(Cli, ConfigFileMatchesFlags) {
  hx::write_text_file(dir_ / "search.toml", "kind=\"cancellative\"\nt=1\nn=5\nr=2\nseed=9\n");
  const CliRun from_file = run({"search", "--config", p("search.toml"), "--deterministic"});
  const CliRun from_flags =
      run({"search", "--kind", "cancellative", "--t", "1", "--n", "5", "--r", "2", "--seed", "9", "--deterministic"});
  ASSERT_EQ(from_file.code, 0) << from_file.err;
  EXPECT_EQ(from_file.out, from_flags.out);
}

TEST_F(Cli, DigestChangesWithConfigButNotWithThreads) {
  const auto digest = [&](std::vector<std::string> extra) {
    std::vector<std::string> args{"bounds", "--t", "2", "--k", "2", "--n", "30"};
    args.insert(args.end(), extra.begin(), extra.end());
    const CliRun r = run(args);
    return r.out.substr(0, r.out.find('\n'));
  };
  EXPECT_EQ(digest({}), digest({"--threads", "3"}));
  EXPECT_NE(digest({}), digest({"--seed", "1"}));
}

TEST_F(Cli, ThreadsEnvironment) {
  ::setenv("HX_THREADS", "2", 1);
  const CliRun ok = run({"verify", "--property", "cancellative", "--t", "1", p("k3.hg")});
  EXPECT_EQ(ok.code, 1);
  ::setenv("HX_THREADS", "zero", 1);
  const CliRun bad = run({"verify", "--property", "cancellative", "--t", "1", p("k3.hg")});
  EXPECT_EQ(bad.code, 2);
  EXPECT_EQ(error_of(bad)["error"]["kind"], "UsageError");
  const CliRun flag = run({"verify", "--property", "cancellative", "--t", "1", p("k3.hg"), "--threads", "1"});
  EXPECT_EQ(flag.code, 1);
  ::unsetenv("HX_THREADS");
}
