#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cli.hpp"

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = seqends::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST(Cli, SigmaOnLine) {
  const auto r = run({"sigma", "--space", "line", "--window", "200", "--resolution", "1", "--k-sweep", "1,2,3",
                      "--radii", "10,50,100,150"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["schema"], 1);
  EXPECT_EQ(j["result"]["stabilized"], 2);
  EXPECT_EQ(j["config"]["radii"], "10,50,100,150");
  EXPECT_EQ(j["config"]["command"], "sigma");
}

TEST(Cli, SameEndOppositeRays) {
  const auto r = run({"same-end", "--space", "line", "--window", "200", "--s", "ray:1", "--t", "ray:-1", "--k-sweep",
                      "1,2,3,4,5", "--radii", "10,50,100,150"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(nlohmann::json::parse(r.out)["result"]["decision"]["verdict"], "distinct-up-to-Kmax");
}

TEST(Cli, DecreasingRadiiRejected) {
  const auto r = run({"sigma", "--space", "line", "--window", "200", "--radii", "50,10"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("radius grid must be increasing"), std::string::npos) << r.err;
  EXPECT_TRUE(r.out.empty());
}

TEST(Cli, PreconditionAndParseErrorsExitTwo) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"sigma", "--radii", "1,x"}).code, 2);
  EXPECT_EQ(run({"generate", "--space", "moebius"}).code, 2);
  EXPECT_EQ(run({"generate", "--input", "/nonexistent/points.csv"}).code, 2);
  EXPECT_EQ(run({"generate", "--format", "dot"}).code, 2);
  EXPECT_EQ(run({"same-end", "--radii", "1,2"}).code, 2);
  EXPECT_EQ(run({"sigma", "--format", "xml", "--radii", "1,2"}).code, 2);
}

TEST(Cli, ByteIdenticalReports) {
  const std::vector<std::string> args{"witness", "--space", "t-shape", "--window", "50", "--s", "polyline:0,1;-1,1;-1,60",
                                      "--t", "polyline:0,1;1,1;1,60", "--k-sweep", "1,2,3", "--radii", "5,10,20,30"};
  const auto a = run(args);
  const auto b = run(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  const auto j = nlohmann::json::parse(a.out);
  EXPECT_EQ(j["result"]["decision"]["verdict"], "same-end");
  EXPECT_EQ(j["result"]["interleaving_check"]["verdict"], "coarse");
}

TEST(Cli, ValidateSeededIsDeterministic) {
  const std::vector<std::string> args{"validate", "--space", "euclidean-n", "--dim", "2", "--window", "6",
                                      "--triples", "200", "--seed", "9"};
  const auto a = run(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, run(args).out);
  EXPECT_EQ(nlohmann::json::parse(a.out)["result"]["ok"], true);
}

TEST(Cli, OutputFileAndFormats) {
  const auto path = (std::filesystem::temp_directory_path() / "seqends_cli_sigma.csv").string();
  const auto r = run({"sigma", "--space", "comb", "--window", "70", "--k-sweep", "16,20", "--radii", "32,36,40,44",
                      "--format", "csv", "--output", path});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  std::stringstream text;
  text << in.rdbuf();
  EXPECT_EQ(text.str(), "K,count,live_margin,stabilized\n16,3,32,3\n20,3,40,3\n");

  const auto dot = run({"sigma", "--space", "line", "--window", "20", "--k-sweep", "1", "--radii", "2,5", "--format", "dot"});
  ASSERT_EQ(dot.code, 0) << dot.err;
  EXPECT_EQ(dot.out.rfind("digraph", 0), 0u);

  const auto comps = run({"components", "--space", "t-shape", "--window", "20", "--K", "1", "--radius", "5"});
  ASSERT_EQ(comps.code, 0) << comps.err;
  EXPECT_EQ(nlohmann::json::parse(comps.out)["result"]["count"], 2);
}

TEST(Cli, CsvInputWithMatrix) {
  const auto dir = std::filesystem::temp_directory_path();
  const auto matrix = (dir / "seqends_cli_matrix.csv").string();
  std::ofstream(matrix) << "0,1,5\n1,0,1\n5,1,0\n";
  const auto r = run({"validate", "--input", "", "--matrix", matrix, "--metric", "explicit-matrix", "--window", "10"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("triangle"), std::string::npos) << r.err;
}

TEST(Cli, InducedDoubling) {
  const auto r = run({"induced", "--space", "line", "--window", "100", "--to-space", "line", "--to-window", "200",
                      "--map", "scale:2", "--s", "ray:1", "--t", "ray:2", "--k-sweep", "1,2,4", "--radii", "10,40,70",
                      "--to-radii", "20,80,140"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out)["result"];
  EXPECT_EQ(j["domain"]["decision"]["verdict"], "same-end");
  EXPECT_EQ(j["codomain"]["decision"]["verdict"], "same-end");
  EXPECT_EQ(j["verdict_preserved"], true);
  EXPECT_EQ(j["moduli"]["bornologous"][0]["M"], 2.0);
}

TEST(Cli, BasepointCheck) {
  const auto r = run({"basepoint-check", "--space", "comb", "--window", "70", "--k-sweep", "1,2,4,8,16,20", "--radii",
                      "32,36,40,44", "--basepoints", "0,1;0,4"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out)["result"];
  EXPECT_EQ(j["consistent"], true);
  EXPECT_EQ(j["runs"].size(), 2u);
}

TEST(Cli, HelpAndVersion) {
  EXPECT_EQ(run({"--help"}).code, 0);
  const auto v = run({"--version"});
  EXPECT_EQ(v.code, 0);
  EXPECT_EQ(v.out, "0.1.0\n");
}
