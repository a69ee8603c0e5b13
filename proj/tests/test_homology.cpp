#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "tetsym/io.hpp"
#include "tetsym/homology.hpp"

using namespace tetsym;
using namespace tetsym::homology;

namespace {

IntMatrix from(int r, int c, std::vector<long long> v) {
  std::vector<Integer> e(v.begin(), v.end());
  return IntMatrix(r, c, e);
}

std::vector<long long> divisors_of(const HomologySummary& h) {
  std::vector<long long> out;
  for (const auto& d : h.divisors) out.push_back(static_cast<long long>(d));
  return out;
}

bool is_diagonal_form(const IntMatrix& d, const HomologySummary& h) {
  for (int i = 0; i < d.rows(); ++i)
    for (int j = 0; j < d.cols(); ++j) {
      Integer want = (i == j && i < static_cast<int>(h.divisors.size())) ? h.divisors[i] : Integer(0);
      if (d(i, j) != want) return false;
    }
  return true;
}

}  // namespace

TEST(SmithNormalForm, Examples) {
  EXPECT_EQ(divisors_of(smith_normal_form(IntMatrix::identity(2)).summary),
            (std::vector<long long>{1, 1}));
  EXPECT_EQ(divisors_of(smith_normal_form(from(2, 2, {2, 4, 6, 8})).summary),
            (std::vector<long long>{2, 4}));
  auto zero = smith_normal_form(IntMatrix(2, 3)).summary;
  EXPECT_EQ(divisors_of(zero), (std::vector<long long>{0, 0}));
  EXPECT_EQ(zero.rank, 2);
}

TEST(SmithNormalForm, CommittedMatrices) {
  EXPECT_EQ(divisors_of(smith_normal_form(io::load_matrix(fixture("synthetic/matrix_2468.json"))).summary),
            (std::vector<long long>{2, 4}));
  auto m003 = presented_homology(io::load_matrix(fixture("homology/m003.json")));
  EXPECT_EQ(divisors_of(m003), (std::vector<long long>{1, 5, 0}));
  auto fig8 = presented_homology(io::load_matrix(fixture("homology/figure_eight.json")));
  EXPECT_TRUE(is_homology_link(fig8, 1));
}

TEST(SmithNormalForm, RandomAgainstMinors) {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> dim(1, 6), entry(-20, 20);
  for (int trial = 0; trial < 2000; ++trial) {
    int r = dim(rng), c = dim(rng);
    std::vector<std::vector<long long>> a(r, std::vector<long long>(c));
    std::vector<long long> flat;
    for (auto& row : a)
      for (auto& x : row) flat.push_back(x = entry(rng));
    IntMatrix m = from(r, c, flat);
    auto snf = smith_normal_form(m);
    ASSERT_EQ(divisors_of(snf.summary), oracle::smith_divisors(a, r, c)) << "trial " << trial;
    ASSERT_TRUE(is_diagonal_form(snf.u * m * snf.v, snf.summary)) << "trial " << trial;
    ASSERT_EQ(abs(determinant(snf.u)), 1);
    ASSERT_EQ(abs(determinant(snf.v)), 1);
  }
}

TEST(SmithNormalForm, LargeEntries) {
  Integer big = Integer(1) << 80;
  IntMatrix m(2, 2, {big * 6, big * 4, big * 10, big * 2});
  auto snf = smith_normal_form(m);
  EXPECT_EQ(snf.summary.divisors[0], big * 2);
  EXPECT_TRUE(is_diagonal_form(snf.u * m * snf.v, snf.summary));
}

TEST(Determinant, Examples) {
  EXPECT_EQ(determinant(from(2, 2, {2, 4, 6, 8})), -8);
  EXPECT_EQ(determinant(from(3, 3, {2, 0, 1, 1, 3, 2, 1, 1, 2})), 6);
  EXPECT_THROW(determinant(IntMatrix(2, 3)), std::invalid_argument);
}

TEST(HomologyLink, Examples) {
  EXPECT_TRUE(is_homology_link({{0, 0}, 2}, 2));
  EXPECT_FALSE(is_homology_link({{2, 0}, 1}, 1));
  EXPECT_FALSE(is_homology_link({{0}, 1}, 2));
  EXPECT_TRUE(is_homology_link({{1, 1, 0, 0}, 2}, 2));
  EXPECT_TRUE(is_homology_link(presented_homology(io::load_matrix(fixture("synthetic/zero_2x2.json"))), 2));
}

TEST(HomologyLink, CensusFixtures) {
  for (const char* name : kCensus) {
    auto h = presented_homology(io::load_matrix(fixture(std::string("census/") + name + "/homology.json")));
    EXPECT_GE(h.rank, 2) << name;
    for (const auto& d : h.divisors) EXPECT_TRUE(d == 0 || d == 1) << name;
  }
}

TEST(MatrixJson, RoundTripAndBigEntries) {
  auto m = parse_matrix(R"({"rows":1,"cols":2,"entries":["123456789012345678901234567890",-3]})");
  EXPECT_EQ(m(0, 0), Integer("123456789012345678901234567890"));
  EXPECT_EQ(parse_matrix(to_json(m)), m);
  EXPECT_THROW(parse_matrix(R"({"rows":2,"cols":2,"entries":[1,2,3]})"), SchemaError);
  EXPECT_THROW(parse_matrix(R"({"rows":1,"cols":1,"entries":["x1"]})"), SchemaError);
  EXPECT_THROW(parse_matrix(R"({"rows":1,"cols":1,"entries":[1.5]})"), SchemaError);
}
