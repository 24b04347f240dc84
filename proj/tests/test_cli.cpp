#include <gtest/gtest.h>

#include <sstream>

#include <json.hpp>

#include "anforms/cli.hpp"

using namespace anforms;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args, const std::string& input = "") {
  std::istringstream in(input);
  std::ostringstream out, err;
  const int code = cli::run(args, in, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST(Cli, GaugeExamples) {
  EXPECT_EQ(run({"gauge", "epsilon", "--n", "3"}).out, "1/6 -1/180 1/1512\n");
  EXPECT_EQ(run({"gauge", "divisor", "--n", "3"}).out.substr(0, 4), "7560");
  EXPECT_EQ(run({"gauge", "lower-bound", "--n", "1", "--sharper"}).out, "6\n");
  EXPECT_EQ(run({"gauge", "lower-bound", "--n", "3"}).out, "16\n");
  EXPECT_EQ(run({"gauge", "prime-pi", "--n", "10"}).out, "4\n");
  EXPECT_EQ(run({"gauge", "unit-class", "--k", "12", "--primes", "2,3"}).out, "2 1\n");
  EXPECT_EQ(run({"gauge", "unit-class", "--k", "0", "--primes", "3"}).out, "inf\n");
  const Result d = run({"gauge", "decide", "--k", "5", "--primes", "5", "--n", "2"});
  EXPECT_EQ(d.code, cli::kExitOk);
  EXPECT_EQ(d.out.substr(0, 12), "trivial (b) ");
}

TEST(Cli, GaugeJson) {
  const auto e = nlohmann::json::parse(run({"gauge", "epsilon", "--n", "2", "--json"}).out);
  EXPECT_EQ(e.dump().find("1/6") != std::string::npos, true);
  const auto d = nlohmann::json::parse(run({"gauge", "decide", "--k", "3", "--primes", "3", "--n", "2", "--json"}).out);
  EXPECT_EQ(d["verdict"], "not-trivial");
  EXPECT_EQ(d["clause"], "d");
  const auto u = nlohmann::json::parse(run({"gauge", "unit-class", "--k", "0", "--primes", "3", "--json"}).out);
  EXPECT_EQ(u, nlohmann::json::parse(R"(["inf"])"));
  const Result c = run({"gauge", "congruence", "--primes", "3,5,7,11,13"});
  EXPECT_EQ(c.code, cli::kExitOk);
  EXPECT_NE(c.out.find("p=3 low=ok middle=ok top=ok p*eps_2=-1/60"), std::string::npos);
}

TEST(Cli, ComplexCommands) {
  EXPECT_EQ(run({"complex", "f-vector", "--family", "K", "--n", "4"}).out, "5 5 1\n");
  EXPECT_EQ(run({"complex", "f-vector", "--family", "J", "--n", "3"}).out, "6 6 1\n");
  EXPECT_EQ(run({"complex", "euler", "--family", "L", "--n", "5"}).out, "2\n");
  EXPECT_EQ(run({"complex", "homology", "--family", "H", "--n", "3"}).out, "1 1\n");
  const auto doc = nlohmann::json::parse(run({"complex", "export", "--family", "K", "--n", "3"}).out);
  EXPECT_EQ(doc["family"], "K");
  EXPECT_EQ(doc["n"], 3);
  EXPECT_EQ(doc["cells"].size(), 3u);
  const Result b = run({"complex", "build", "--family", "K", "--n", "3"});
  EXPECT_EQ(std::count(b.out.begin(), b.out.end(), '\n'), 3);
}

TEST(Cli, TreeCommands) {
  EXPECT_EQ(run({"trees", "enumerate", "--kind", "binary", "--leaves", "3"}).out, "((* *) *)\n(* (* *))\n");
  EXPECT_EQ(run({"trees", "reduce", "--tree", "(((* *)@1/2 *)@0 *)"}).out, "((* *)@1/2 * *)\n");
  EXPECT_EQ(run({"trees", "reduce"}, "(((* *)@1/2 *)@0 *)\n").out, "((* *)@1/2 * *)\n");
  EXPECT_EQ(run({"trees", "graft", "--kind", "partial", "--k", "1", "--tree", "(* *)", "--tree", "(* *)"}).out,
            "((* *)@1 *)\n");
  EXPECT_EQ(run({"trees", "graft", "--kind", "left"}, "(* *)\nb(*)\nb(*)\n").out, "p(b(*)@1 b(*)@1)\n");
  EXPECT_EQ(run({"trees", "level-test", "--tree", "p(b(*)@1 b(*)@1/2)"}).out, "false\n");
  EXPECT_EQ(run({"trees", "level-test", "--tree", "p(b(*)@1 b(*)@1)"}).out.substr(0, 5), "true\n");
  EXPECT_EQ(run({"trees", "equal"}, "((* *)@0 *)\n(* (* *)@0)\n").out, "true\n");
  const auto v = run({"trees", "validate", "--tree", "(*)"});
  EXPECT_EQ(v.code, cli::kExitDomain);
}

TEST(Cli, VerifyRelations) {
  const Result r = run({"verify", "relations", "--max-leaves", "4", "--samples", "0,1", "--jobs", "2"});
  EXPECT_EQ(r.code, cli::kExitOk);
  EXPECT_NE(r.out.find("failures 0"), std::string::npos);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({}).code, cli::kExitUsage);
  EXPECT_EQ(run({"frobnicate"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"gauge", "epsilon"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"complex", "f-vector", "--family", "Q", "--n", "3"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"gauge", "epsilon", "--n", "abc"}).code, cli::kExitUsage);
  const Result big = run({"complex", "f-vector", "--family", "K", "--n", "12"});
  EXPECT_EQ(big.code, cli::kExitDomain);
  EXPECT_FALSE(big.err.empty());
  EXPECT_EQ(run({"gauge", "decide", "--k", "1", "--primes", "4", "--n", "1"}).code, cli::kExitDomain);
  EXPECT_EQ(run({"trees", "reduce", "--tree", "((* *)"}).code, cli::kExitDomain);
  EXPECT_EQ(run({"gauge", "congruence", "--primes", "17"}).code, cli::kExitDomain);
}

TEST(Cli, Deterministic) {
  const std::vector<std::vector<std::string>> commands{
      {"complex", "build", "--family", "J", "--n", "4"},
      {"complex", "export", "--family", "L", "--n", "5"},
      {"trees", "enumerate", "--kind", "painted-all", "--leaves", "3", "--json"},
      {"verify", "relations", "--max-leaves", "4", "--jobs", "3"},
  };
  for (const auto& c : commands) EXPECT_EQ(run(c).out, run(c).out);
}
