#include <gtest/gtest.h>
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <json.hpp>
#include <string>

#include "fixtures.hpp"

namespace {

struct Run {
  int status;
  nlohmann::json out;
};

Run cli(const std::string& args) {
  std::string cmd = std::string(TETSYM_CLI) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) throw std::runtime_error("cannot run " + cmd);
  std::string text;
  std::array<char, 4096> buf;
  while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe)) text.append(buf.data(), n);
  int raw = pclose(pipe);
  return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, nlohmann::json::parse(text, nullptr, false)};
}

std::string fx(const std::string& rel) { return fixture(rel).string(); }

}  // namespace

TEST(Cli, CoversSixTwoTwoOverOrbifold) {
  auto r = cli("covers " + fx("census/otet04_00001/dseq0.json") + " " + fx("dseq/o_v0_3.json"));
  EXPECT_EQ(r.status, 0);
  EXPECT_GE(r.out["count"].get<int>(), 1);
}

TEST(Cli, CoversBuiltinName) {
  auto r = cli("covers " + fx("census/otet20_00049/dseq0.json") + " o236_2222");
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out["count"], 2);
}

TEST(Cli, NoCoverIsNegative) {
  auto r = cli("covers " + fx("census/otet04_00001/dseq0.json") + " o236_2222");
  EXPECT_EQ(r.status, 2);
  EXPECT_EQ(r.out["count"], 0);
}

TEST(Cli, SymtestSquareStrong) {
  auto r = cli("symtest --mode strong " + fx("synthetic/square.json"));
  EXPECT_EQ(r.status, 2);
  EXPECT_EQ(r.out["result"], false);
}

TEST(Cli, SymtestHexagonalWeak) {
  auto r = cli("--exhaustive-c0 symtest --mode weak " + fx("synthetic/hexagonal.json"));
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out["result"], true);
  EXPECT_TRUE(r.out["c0_sensitivity"]["disagreements"].empty());
}

TEST(Cli, SymtestOrder6) {
  auto r = cli("symtest --mode order6 " + fx("census/otet08_00002/cusp0.json"));
  EXPECT_EQ(r.status, 0);
  EXPECT_FALSE(r.out["axes"].empty());
}

TEST(Cli, HomologyZeroMatrix) {
  auto r = cli("homology " + fx("synthetic/zero_2x2.json") + " 2");
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out["homology_link"], true);
  r = cli("homology " + fx("homology/m003.json") + " 1");
  EXPECT_EQ(r.status, 2);
  EXPECT_EQ(r.out["divisors"], nlohmann::json({1, 5, 0}));
}

TEST(Cli, ValidateKinds) {
  auto r = cli("validate " + fx("dseq/broken_pairing.json"));
  EXPECT_EQ(r.status, 2);
  EXPECT_EQ(r.out["violations"].size(), 2u);
  r = cli("validate " + fx("tables/figure_eight.json"));
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out["cusps"], 1);
  r = cli("validate " + fx("census/otet08_00002/meta.json"));
  EXPECT_EQ(r.status, 0);
}

TEST(Cli, SchemaErrorExitsOne) {
  auto r = cli("cusps " + fx("exceptional_pairs.json"));
  EXPECT_EQ(r.status, 1);
  EXPECT_NE(r.out["error"].get<std::string>().find("exceptional_pairs.json"), std::string::npos);
  r = cli("cusps /nonexistent.json");
  EXPECT_EQ(r.status, 1);
}

TEST(Cli, OrbifoldizeAndCusps) {
  auto r = cli("orbifoldize " + fx("tables/figure_eight.json"));
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out["n"], 24);
  r = cli("cusps o236_2222");
  EXPECT_EQ(r.out["classes"][0], nlohmann::json({0, 1, 3, 4}));
}

TEST(Cli, ClassifyFixtures) {
  auto r = cli("classify " + fx("census/otet08_00002"));
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out["manifolds"][0]["cusps"][0]["verdict"], "E2");
}
