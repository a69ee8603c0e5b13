#include <gtest/gtest.h>

#include <unistd.h>

#include <fstream>
#include <json.hpp>

#include "fixtures.hpp"
#include "tetsym/classify.hpp"
#include "tetsym/io.hpp"

using namespace tetsym;
using namespace tetsym::classify;
namespace fs = std::filesystem;

namespace {

const CuspResult& cusp(const ManifoldReport& r, int c) {
  for (const auto& x : r.cusps)
    if (x.cusp == c) return x;
  throw std::out_of_range("cusp not classified");
}

ManifoldReport run(const std::string& name, const Options& opts = {}) {
  return classify_manifold(load_fixture(fixture("census/" + name)), opts);
}

// Copy of a census fixture in a scratch directory, with meta.json edits.
class ScratchFixture {
 public:
  ScratchFixture(const std::string& name, const std::string& tag) {
    dir_ = fs::temp_directory_path() / ("tetsym_" + tag + "_" + std::to_string(::getpid()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    fs::copy(fixture("census/" + name), dir_ / name, fs::copy_options::recursive);
    meta_ = nlohmann::json::parse(io::read_text(dir_ / name / "meta.json"));
    path_ = dir_ / name;
  }
  ~ScratchFixture() { fs::remove_all(dir_); }
  nlohmann::json& meta() { return meta_; }
  fs::path save() {
    std::ofstream(path_ / "meta.json") << meta_.dump(1);
    return path_;
  }
  fs::path root() const { return dir_; }
  fs::path path() const { return path_; }

 private:
  fs::path dir_, path_;
  nlohmann::json meta_;
};

}  // namespace

TEST(Verdict, Names) {
  for (auto v : {Verdict::kNotExceptional, Verdict::kE1, Verdict::kE2, Verdict::kE3, Verdict::kE4,
                 Verdict::kUnresolved})
    EXPECT_EQ(parse_verdict(to_string(v)), v);
  EXPECT_THROW(parse_verdict("E5"), SchemaError);
}

TEST(CuspList, DropsSymmetricPartners) {
  EXPECT_EQ(cusp_list(2, {{0, 1}, {1, 0}}), (std::vector<int>{0}));
  EXPECT_EQ(cusp_list(4, {{0, 1, 2, 3}, {3, 2, 1, 0}}), (std::vector<int>{0, 1}));
  EXPECT_EQ(cusp_list(3, {{0, 1, 2}}), (std::vector<int>{0, 1, 2}));
  // a 3-cycle has no involutive pairs, so nothing is dropped
  EXPECT_EQ(cusp_list(3, {{1, 2, 0}}), (std::vector<int>{0, 1, 2}));
}

TEST(CuspList, AgreesWithFixtures) {
  for (const char* name : kCensus) {
    auto rec = load_fixture(fixture(std::string("census/") + name));
    ASSERT_TRUE(rec.cusp_list.has_value());
    EXPECT_EQ(cusp_list(rec.num_cusps, rec.isometry_cusp_images), *rec.cusp_list) << name;
  }
}

TEST(Fixture, MissingFileIsReported) {
  ScratchFixture s("otet04_00001", "missing");
  fs::remove(s.path() / "cusp0.json");
  EXPECT_THROW(load_fixture(s.path()), SchemaError);
  auto report = classify_directory(s.root());
  ASSERT_EQ(report.manifolds.size(), 1u);
  ASSERT_TRUE(report.manifolds[0].error.has_value());
  EXPECT_NE(report.manifolds[0].error->find("cusp0.json"), std::string::npos);
}

TEST(Fixture, BadCuspMap) {
  ScratchFixture s("otet04_00001", "cuspmap");
  s.meta()["triangulations"][0]["cusp_map"] = {0, 0};
  EXPECT_THROW(load_fixture(s.save()), SchemaError);
}

TEST(Fixture, CuspListMustFollowIsometries) {
  ScratchFixture s("otet04_00001", "cusplist");
  s.meta()["cusp_list"] = {0, 1};
  EXPECT_THROW(classify_manifold(load_fixture(s.save())), SchemaError);
}

TEST(Classify, E2Manifold) {
  auto r = run("otet08_00002");
  for (int c : {0, 1}) {
    EXPECT_EQ(cusp(r, c).verdict, Verdict::kE2);
    ASSERT_TRUE(cusp(r, c).order6_axes.has_value());
    EXPECT_FALSE(cusp(r, c).order6_axes->empty());
  }
}

TEST(Classify, E3Manifold) {
  auto r = run("otet20_00062");
  const auto& c = cusp(r, 2);
  EXPECT_EQ(c.verdict, Verdict::kE3);
  EXPECT_TRUE(c.strong);
  EXPECT_EQ(c.full3_passing, 0);
  EXPECT_GT(*c.full3_checked, 0);
  EXPECT_EQ(cusp(r, 0).verdict, Verdict::kNotExceptional);
}

TEST(Classify, GoodCoverManifold) {
  auto r = run("otet20_00049");
  ASSERT_EQ(r.covers.size(), 2u);
  EXPECT_EQ(r.covers[0].rigid_cusps, std::vector<int>{1});
  EXPECT_EQ(r.covers[1].rigid_cusps, std::vector<int>{0});
  for (int c : {0, 1}) {
    auto v = cusp(r, c).verdict;
    EXPECT_TRUE(v == Verdict::kE1 || v == Verdict::kE4);
    EXPECT_TRUE(cusp(r, c).good_cover.has_value());
  }
  EXPECT_EQ(r.represented_by, (std::map<int, int>{{2, 1}, {3, 0}}));
}

TEST(Classify, SingleExceptionalCuspIsE1) {
  auto r = run("otet20_00059");
  EXPECT_EQ(r.exceptional_cusps, std::vector<int>{0});
  EXPECT_EQ(cusp(r, 0).verdict, Verdict::kE1);
}

TEST(Classify, AdjustmentsAreApplied) {
  Options opts;
  opts.adjustments.add_to_e1 = {{"otet20_00049", 1}};
  opts.adjustments.remove_from_e4 = {{"otet20_00049", 0}};
  auto r = run("otet20_00049", opts);
  EXPECT_EQ(cusp(r, 1).verdict, Verdict::kE1);
  EXPECT_TRUE(cusp(r, 1).adjusted);
  // removed from E4, so it falls through to the packing tests
  const auto& c0 = cusp(r, 0);
  EXPECT_TRUE(c0.adjusted);
  EXPECT_TRUE(c0.order6_axes.has_value());
  EXPECT_NE(c0.verdict, Verdict::kE4);
}

TEST(Classify, PublishedAdjustments) {
  auto a = Adjustments::published();
  EXPECT_EQ(a.add_to_e1.size(), 2u);
  EXPECT_EQ(a.remove_from_e4.size(), 4u);
  EXPECT_TRUE(a.add_to_e1.count({"otet20_01414", 2}));
  EXPECT_TRUE(a.remove_from_e4.count({"otet20_01438", 3}));
}

TEST(Classify, TorsionSkipsManifold) {
  ScratchFixture s("otet04_00001", "torsion");
  fs::copy_file(fixture("homology/m003.json"), s.path() / "homology.json",
                fs::copy_options::overwrite_existing);
  auto r = classify_manifold(load_fixture(s.path()));
  ASSERT_TRUE(r.skipped.has_value());
  EXPECT_TRUE(r.cusps.empty());
}

TEST(Classify, ExhaustiveC0) {
  Options opts;
  opts.exhaustive_c0 = true;
  auto r = run("otet08_00002", opts);
  for (const auto& c : r.cusps) {
    ASSERT_TRUE(c.c0_checked.has_value());
    EXPECT_GT(*c.c0_checked, 0);
  }
}

TEST(Classify, CommittedSetMatchesExpectedAndIsStable) {
  auto a = classify_directory(fixture("census"));
  EXPECT_EQ(a.manifolds.size(), std::size(kCensus));
  EXPECT_TRUE(mismatches(a).empty());
  for (std::size_t k = 1; k < a.manifolds.size(); ++k)
    EXPECT_LE(a.manifolds[k - 1].census_index, a.manifolds[k].census_index);
  auto b = classify_directory(fixture("census"));
  EXPECT_EQ(to_json(a), to_json(b));
}

TEST(Classify, VerdictInvariants) {
  auto report = classify_directory(fixture("census"));
  for (const auto& m : report.manifolds)
    for (const auto& c : m.cusps) {
      switch (c.verdict) {
        case Verdict::kE2:
          EXPECT_TRUE(c.order6_axes && !c.order6_axes->empty());
          break;
        case Verdict::kE3:
          EXPECT_TRUE(c.strong && c.full3_passing == 0);
          break;
        case Verdict::kE1:
        case Verdict::kE4:
          EXPECT_TRUE(c.good_cover.has_value());
          break;
        default:
          break;
      }
    }
}
