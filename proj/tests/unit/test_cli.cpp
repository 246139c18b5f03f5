#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "cli.hpp"
#include "pathpair/io.hpp"

namespace pathpair::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("pathpair_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string file(const std::string& name) const { return (dir_ / name).string(); }
  fs::path dir_;
};

TEST_F(CliTest, VersionAndUsage) {
  EXPECT_EQ(call({"--version"}).code, kExitOk);
  EXPECT_EQ(call({}).code, kExitUsage);
  EXPECT_EQ(call({"gen", "nonsense"}).code, kExitUsage);
  EXPECT_EQ(call({"route", "--method", "kmm", "--strict", "--explore", "--m", "6"}).code, kExitUsage);
}

TEST_F(CliTest, GenFamilies) {
  const Result r = call({"gen", "star", "--n", "4"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const Graph g = io::graph_from_json(json::parse(r.out));
  EXPECT_EQ(g, star(4));
  const Result dot = call({"gen", "cycle", "--k", "4", "--format", "dot"});
  EXPECT_NE(dot.out.find("--"), std::string::npos);
  const Result grid = call({"gen", "grid", "--d", "2"});
  ASSERT_EQ(grid.code, kExitOk);
  const json gj = json::parse(grid.out);
  EXPECT_EQ(gj["size"], 20);
  EXPECT_EQ(gj["boundary"], 18);
  EXPECT_EQ(call({"gen", "complete", "--n", "0"}).code, kExitUsage);
}

TEST_F(CliTest, AdversarialInstanceIsRefuted) {
  const Result r = call({"gen", "starblock", "--b", "2", "--d", "2", "--out", file("g.json"),
                         "--pairs-out", file("p.json")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const Result o = call({"oracle", "--graph", file("g.json"), "--pairs", file("p.json")});
  EXPECT_EQ(o.code, kExitFailed);
  EXPECT_EQ(json::parse(o.out)["verdict"], "infeasible");
}

TEST_F(CliTest, OracleCounterExample) {
  const Result r = call({"oracle", "--graph", "gen:cycle:4", "--k", "2"});
  EXPECT_EQ(r.code, kExitFailed);
  EXPECT_EQ(json::parse(r.out)["counter"], json::parse("[[0,2],[1,3]]"));
  EXPECT_EQ(call({"oracle", "--graph", "gen:hypercube:3", "--k", "2"}).code, kExitOk);
  EXPECT_EQ(call({"oracle", "--graph", "gen:cycle:4", "--k", "2", "--pp", "2"}).code, kExitUsage);
}

TEST_F(CliTest, BudgetMapsToExitThree) {
  EXPECT_EQ(call({"oracle", "--graph", "gen:hypercube:4", "--k", "8", "--budget", "10"}).code, kExitBudget);
  EXPECT_EQ(call({"cut", "--graph", "gen:complete:40", "--full", "--cap", "100"}).code, kExitBudget);
}

TEST_F(CliTest, RouteThenVerify) {
  const Result r = call({"route", "--method", "thm1", "--graph-g", "gen:cycle:9", "--graph-h", "gen:cycle:9",
                         "--solver-g", "oracle", "--solver-h", "oracle", "--a", "1", "--b", "1", "--seed", "3",
                         "--out", file("paths.json.gz"), "--pairs-out", file("pairs.json"), "--manifest",
                         file("m.json")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  std::ifstream raw(file("paths.json.gz"), std::ios::binary);
  const std::string bytes((std::istreambuf_iterator<char>(raw)), std::istreambuf_iterator<char>());
  EXPECT_TRUE(io::is_gzip(bytes));
  ASSERT_EQ(call({"product", "--graph-g", "gen:cycle:9", "--graph-h", "gen:cycle:9", "--out", file("host.json")}).code,
            kExitOk);
  const Result v = call({"verify", "--graph", file("host.json"), "--pairs", file("pairs.json"), "--paths",
                         file("paths.json.gz")});
  EXPECT_EQ(v.code, kExitOk) << v.out << v.err;

  const json m = json::parse(io::read_file(file("m.json")));
  EXPECT_EQ(m["tool"], "pathpair");
  EXPECT_EQ(m["seed"], 3);
  EXPECT_EQ(m["exit_code"], 0);
  EXPECT_TRUE(m["outputs"].contains("paths"));
  EXPECT_FALSE(m["parameters"].contains("out"));
}

TEST_F(CliTest, VerifyRejectsBadSystem) {
  io::write_file(file("pairs.json"), R"({"pairs":[[0,2],[1,3]]})");
  io::write_file(file("paths.json"), R"({"routes":[[0,1,2],[1,2,3]]})");
  const Result v = call({"verify", "--graph", "gen:cycle:4", "--pairs", file("pairs.json"), "--paths",
                         file("paths.json")});
  EXPECT_EQ(v.code, kExitFailed);
  EXPECT_EQ(json::parse(v.out)["ok"], false);
}

TEST_F(CliTest, MalformedInput) {
  io::write_file(file("bad.json"), "{\"n\": 3, \"edges\": [[0,1],");
  const Result r = call({"cut", "--graph", file("bad.json"), "--k", "1"});
  EXPECT_EQ(r.code, kExitUsage);
  EXPECT_NE(r.err.find("byte"), std::string::npos);
}

TEST_F(CliTest, PreconditionsAreUsageErrors) {
  const Result r = call({"route", "--method", "thm1", "--graph-g", "gen:cycle:7", "--graph-h", "gen:cycle:9",
                         "--solver-g", "oracle", "--solver-h", "oracle", "--a", "1", "--b", "1"});
  EXPECT_EQ(r.code, kExitUsage);
}

TEST_F(CliTest, SeededRunsRepeatByteForByte) {
  std::vector<std::string> contents;
  for (int rep = 0; rep < 2; ++rep) {
    const Result r = call({"route", "--method", "sweep", "--k", "8", "--m", "4", "--seed", "11", "--out",
                           file("paths.json"), "--manifest", file("m.json")});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    contents.push_back(io::read_file(file("paths.json")) + io::read_file(file("m.json")));
  }
  EXPECT_EQ(contents[0], contents[1]);
}

TEST_F(CliTest, BudgetEnvironmentPrecedence) {
  ::setenv("PATHPAIR_BUDGET", "10", 1);
  EXPECT_EQ(call({"oracle", "--graph", "gen:hypercube:4", "--k", "8"}).code, kExitBudget);
  EXPECT_EQ(call({"oracle", "--graph", "gen:cycle:4", "--k", "1", "--budget", "100000"}).code, kExitOk);
  ::unsetenv("PATHPAIR_BUDGET");
}

}  // namespace
}  // namespace pathpair::cli
