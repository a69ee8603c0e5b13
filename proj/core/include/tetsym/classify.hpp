#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tetsym/cuspgeom.hpp"
#include "tetsym/homology.hpp"

namespace tetsym::classify {

enum class Verdict { kNotExceptional, kE1, kE2, kE3, kE4, kUnresolved };

std::string_view to_string(Verdict v);
// Throws SchemaError on an unknown name.
Verdict parse_verdict(std::string_view name);

struct TriangulationRecord {
  std::filesystem::path table;
  std::filesystem::path dseq;
  std::string isosig;
  std::vector<int> cusp_map;  // cusp_map[table cusp] = manifold cusp
};

struct DiagramRecord {
  int cusp;
  std::filesystem::path file;
  std::vector<int> maximization_order;
};

// Per-manifold metadata (meta.json) with paths resolved against its directory.
struct FixtureRecord {
  std::filesystem::path dir;
  std::string manifold;
  int census_index = 0;
  int num_cusps = 0;
  int num_tetrahedra = 0;
  std::vector<TriangulationRecord> triangulations;
  std::vector<DiagramRecord> diagrams;
  std::filesystem::path homology;
  std::vector<std::vector<int>> isometry_cusp_images;
  std::vector<std::vector<int>> symmetry_classes;
  std::optional<std::vector<int>> cusp_list;
  std::map<int, Verdict> expected;

  const DiagramRecord* diagram_for(int cusp) const;
};

// Checks the schema, index ranges and that every referenced file exists.
FixtureRecord load_fixture(const std::filesystem::path& dir);

// Drops g(i) whenever g(i) > i and g(g(i)) = i for some isometry g.
std::vector<int> cusp_list(int num_cusps, const std::vector<std::vector<int>>& cusp_images);

// Hand corrections to the rule-based split, keyed by (manifold, cusp).
struct Adjustments {
  std::set<std::pair<std::string, int>> add_to_e1;
  std::set<std::pair<std::string, int>> remove_from_e4;

  static Adjustments published();
};

struct Options {
  cuspgeom::Tolerances tol;
  cuspgeom::LabelPolicy order6_policy = cuspgeom::LabelPolicy::kInfinityClass;
  cuspgeom::LabelPolicy full3_policy = cuspgeom::LabelPolicy::kInfinityClass;
  bool exhaustive_c0 = false;
  Adjustments adjustments = Adjustments::published();
};

struct CoverEvidence {
  int triangulation;
  int seed;                      // phi[0]
  std::vector<int> rigid_cusps;  // manifold cusps over the rigid cusp
};

struct C0Disagreement {
  cuspgeom::Complex c0;
  bool result;
};

struct CuspResult {
  int cusp = 0;
  Verdict verdict = Verdict::kUnresolved;
  std::string reason;
  bool strong = false;
  cuspgeom::Complex c0;
  int strong_candidates = 0;
  int strong_passing = 0;
  std::optional<CoverEvidence> good_cover;
  bool adjusted = false;
  std::optional<std::vector<cuspgeom::Axis>> order6_axes;
  std::optional<int> full3_passing;
  std::optional<int> full3_checked;
  std::optional<int> c0_checked;
  std::vector<C0Disagreement> c0_disagreements;
  std::optional<Verdict> expected;
};

struct ManifoldReport {
  std::string manifold;
  int census_index = 0;
  std::optional<std::string> error;
  std::optional<std::string> skipped;
  std::vector<homology::Integer> homology;
  std::vector<int> cusp_list;
  std::map<int, int> represented_by;  // cusps outside the list and their representative
  std::vector<int> exceptional_cusps;
  std::vector<CoverEvidence> covers;
  std::vector<CuspResult> cusps;
};

struct Report {
  std::vector<ManifoldReport> manifolds;
};

ManifoldReport classify_manifold(const FixtureRecord& rec, const Options& opts = {});

// Every directory below `root` (or `root` itself) holding a meta.json. Manifolds
// are processed concurrently; output is ordered by census index, then name.
Report classify_directory(const std::filesystem::path& root, const Options& opts = {});

// Verdicts that disagree with the fixture's expected labels, as "manifold:cusp" strings.
std::vector<std::string> mismatches(const Report& report);

std::string to_json(const Report& report);

}  // namespace tetsym::classify
