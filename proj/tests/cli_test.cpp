#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "lep/cli.hpp"
#include "lep/family.hpp"
#include "lep/graph.hpp"

namespace lep {
namespace {

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  Result r;
  r.code = cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream is(text);
  for (std::string line; std::getline(is, line);) {
    out.push_back(line);
  }
  return out;
}

TEST(Cli, PartitionFunctionOfPathFive) {
  const Result r = run({"z", "--family", "path:n=5", "--q", "1"});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  const auto l = lines(r.out);
  ASSERT_EQ(l.size(), 3u);
  EXPECT_EQ(l[0].rfind("# command=z", 0), 0u);
  EXPECT_EQ(l[1], "q,method,log_z,z");
  EXPECT_EQ(l[2].substr(l[2].rfind(',') + 1), "55");
}

TEST(Cli, PartitionFunctionMethodsAgree) {
  for (const char* method : {"det", "closed", "enum"}) {
    const Result r = run({"z", "--family", "cycle:n=4", "--q", "1", "--method", method});
    ASSERT_EQ(r.code, cli::kOk) << method << ": " << r.err;
    const std::string last = lines(r.out).back();
    EXPECT_NEAR(std::stod(last.substr(last.rfind(',') + 1)), 45.0, 1e-9) << method;
  }
}

TEST(Cli, CorrelationOfPathTwo) {
  const Result r = run({"corr", "--family", "path:n=2", "--pair", "1,2", "--q", "2", "--method", "auto"});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  const auto l = lines(r.out);
  ASSERT_EQ(l.size(), 3u);
  EXPECT_EQ(l[1], "q,x,y,method,exact,estimate,stderr,R,seed");
  EXPECT_EQ(l[2].rfind("2,1,2,", 0), 0u);
  EXPECT_NE(l[2].find(",0.5,"), std::string::npos) << l[2];
}

TEST(Cli, MonteCarloCorrelationIsSeeded) {
  const std::vector<std::string> args = {"corr",      "--family", "cycle:n=6", "--pair", "1,4",
                                         "--q",       "0.5",      "--method",  "mc",     "--replicas",
                                         "5000",      "--seed",   "77"};
  const Result a = run(args);
  const Result b = run(args);
  ASSERT_EQ(a.code, cli::kOk) << a.err;
  EXPECT_EQ(a.out, b.out);
  auto other = args;
  other.back() = "78";
  EXPECT_NE(run(other).out, a.out);
}

TEST(Cli, GenerateBottleneckEdgeList) {
  const Result r = run({"gen", "--family", "bottleneck:n=3,m=2,w=0.5"});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  const WeightedDigraph g = load_edge_list(r.out);
  EXPECT_EQ(g.edges().size(), 10u);
  EXPECT_EQ(g, make_family(BottleneckFamily{3, 2, 0.5}));
}

TEST(Cli, GraphFileInput) {
  const auto path = std::filesystem::temp_directory_path() / "lep_cli_test_graph.tsv";
  {
    std::ofstream f(path);
    f << save_edge_list(make_family(PathFamily{3}));
  }
  const Result r = run({"z", "--graph", path.string(), "--q", "1"});
  std::filesystem::remove(path);
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  EXPECT_EQ(lines(r.out).back().substr(lines(r.out).back().rfind(',') + 1), "8");
}

TEST(Cli, SampleEmitsOneJsonLinePerReplica) {
  const Result r = run({"sample", "--family", "star:n=4,w=1", "--q", "1", "--replicas", "3", "--seed", "9"});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  const auto l = lines(r.out);
  ASSERT_EQ(l.size(), 4u);
  for (std::size_t i = 1; i < l.size(); ++i) {
    EXPECT_EQ(l[i].front(), '{');
    EXPECT_NE(l[i].find("\"replica\":" + std::to_string(i - 1)), std::string::npos);
  }
  EXPECT_EQ(run({"sample", "--family", "star:n=4,w=1", "--q", "1", "--replicas", "3", "--seed", "9"}).out,
            r.out);
}

TEST(Cli, SweepCsvAndJson) {
  const Result csv = run({"sweep", "--family", "star:n=4,w=1", "--q-grid", "log:0.1:10:3"});
  ASSERT_EQ(csv.code, cli::kOk) << csv.err;
  const auto l = lines(csv.out);
  ASSERT_EQ(l.size(), 2u + 6u);
  EXPECT_EQ(l[1], "q,tag,exact,estimate,stderr,R,seed");

  const Result json = run({"sweep", "--family", "star:n=4,w=1", "--q-grid", "0.5,2", "--format", "json"});
  ASSERT_EQ(json.code, cli::kOk) << json.err;
  EXPECT_NE(json.out.find("\"config\""), std::string::npos);
  EXPECT_NE(json.out.find("\"rows\""), std::string::npos);
}

TEST(Cli, VerifySubset) {
  const Result r = run({"verify", "--only", "3"});
  EXPECT_EQ(r.code, cli::kOk) << r.out << r.err;
  EXPECT_NE(r.out.find("PASS [3]"), std::string::npos);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, cli::kUsage);
  EXPECT_EQ(run({"frobnicate"}).code, cli::kUsage);
  EXPECT_EQ(run({"z", "--family", "path:n=5"}).code, cli::kUsage);
  EXPECT_EQ(run({"z", "--family", "lattice:n=5", "--q", "1"}).code, cli::kUsage);
  EXPECT_EQ(run({"z", "--family", "path:n=5", "--q", "-1"}).code, cli::kUsage);
  EXPECT_EQ(run({"z", "--family", "path:n=12", "--q", "1", "--method", "enum"}).code, cli::kUsage);
  EXPECT_EQ(run({"corr", "--family", "cycle:n=5", "--pair", "1,3", "--q", "1", "--method", "det"}).code,
            cli::kUsage);
  EXPECT_EQ(run({"corr", "--family", "path:n=5", "--pair", "0,3", "--q", "1"}).code, cli::kUsage);
  EXPECT_EQ(run({"z", "--graph", "/nonexistent/graph.tsv", "--q", "1"}).code, cli::kUsage);
  const Result r = run({"z", "--family", "path:n=5"});
  EXPECT_FALSE(r.err.empty());
}

}  // namespace
}  // namespace lep
