// tetsym: JSON-in, JSON-out front end to the library.
// Exit status: 0 success, 2 test-negative, 1 error.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <iostream>
#include <map>
#include <string>

#include "tetsym/classify.hpp"
#include "tetsym/cuspgeom.hpp"
#include "tetsym/homology.hpp"
#include "tetsym/io.hpp"
#include "tetsym/orbtri.hpp"
#include "tetsym/tetglue.hpp"

namespace {

using ojson = nlohmann::ordered_json;
using namespace tetsym;

constexpr int kOk = 0;
constexpr int kError = 1;
constexpr int kNegative = 2;

ojson point(cuspgeom::Complex z) {
  auto r = [](double x) {
    double y = std::round(x * 1e9) / 1e9;
    return y == 0 ? 0.0 : y;
  };
  return ojson::array({r(z.real()), r(z.imag())});
}

int emit(const ojson& doc, int code) {
  std::cout << doc.dump(2) << "\n";
  return code;
}

// Built-in names are accepted wherever a destination sequence file is expected.
orbtri::DestinationSequence sequence(const std::string& arg) {
  if (arg == "o236_2222") return orbtri::o236_2222();
  if (arg == "o_v0_over_3") return orbtri::o_v0_over_3();
  return io::load_dseq(arg);
}

std::string kind_of(const std::string& path) {
  auto doc = nlohmann::json::parse(io::read_text(path), nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) return "unknown";
  if (doc.contains("triangulations")) return "fixture";
  if (doc.contains("gluings")) return "gluing_table";
  if (doc.contains("horoballs")) return "diagram";
  if (doc.contains("rows")) return "matrix";
  if (doc.contains("entries")) return "dseq";
  return "unknown";
}

std::string table_error_name(tetglue::TableError k) {
  switch (k) {
    case tetglue::TableError::kMalformed: return "malformed";
    case tetglue::TableError::kUngluedFace: return "unglued_face";
    case tetglue::TableError::kSelfGluedFace: return "self_glued_face";
    case tetglue::TableError::kDuplicateGluing: return "duplicate_gluing";
    case tetglue::TableError::kInvolution: return "involution";
    case tetglue::TableError::kNonOrientable: return "non_orientable";
    case tetglue::TableError::kDisconnected: return "disconnected";
    case tetglue::TableError::kCuspLabels: return "cusp_labels";
  }
  return "unknown";
}

int cmd_validate(const std::string& path) {
  std::string kind = kind_of(path);
  ojson doc = {{"file", path}, {"kind", kind}};
  if (kind == "dseq") {
    auto seq = io::load_dseq(path);
    auto rep = orbtri::validate(seq);
    ojson v = ojson::array();
    for (const auto& x : rep.violations)
      v.push_back({{"family", x.family}, {"index", x.index}, {"detail", x.detail}});
    doc["valid"] = rep.ok();
    doc["violations"] = v;
    return emit(doc, rep.ok() ? kOk : kNegative);
  }
  if (kind == "gluing_table") {
    try {
      auto tri = io::load_gluing_table(path);
      doc["valid"] = true;
      doc["tetrahedra"] = tri.size();
      doc["cusps"] = tetglue::manifold_cusp_classes(tri).count();
      return emit(doc, kOk);
    } catch (const tetglue::InvalidTriangulation& e) {
      doc["valid"] = false;
      doc["error_kind"] = table_error_name(e.kind());
      doc["detail"] = e.what();
      return emit(doc, kNegative);
    }
  }
  if (kind == "diagram") {
    auto diag = io::load_diagram(path);
    auto problems = cuspgeom::diagram_problems(diag);
    doc["valid"] = problems.empty();
    doc["problems"] = problems;
    return emit(doc, problems.empty() ? kOk : kNegative);
  }
  if (kind == "matrix") {
    auto m = io::load_matrix(path);
    doc["valid"] = true;
    doc["rows"] = m.rows();
    doc["cols"] = m.cols();
    return emit(doc, kOk);
  }
  if (kind == "fixture") {
    classify::load_fixture(std::filesystem::path(path).parent_path());
    doc["valid"] = true;
    return emit(doc, kOk);
  }
  throw SchemaError(path + ": not a recognised file schema");
}

int cmd_cusps(const std::string& path) {
  auto seq = sequence(path);
  orbtri::require_valid(seq);
  auto part = orbtri::cusp_seqs(seq);
  return emit({{"name", seq.name()}, {"count", part.count()}, {"classes", part.classes()}}, kOk);
}

int cmd_covers(const std::string& up_path, const std::string& down_path) {
  auto up = sequence(up_path);
  auto down = sequence(down_path);
  orbtri::require_valid(up);
  orbtri::require_valid(down);
  auto up_cusps = orbtri::cusp_seqs(up);
  auto down_cusps = orbtri::cusp_seqs(down);
  auto found = orbtri::covers(up, down);
  ojson list = ojson::array();
  for (const auto& map : found) {
    ojson images = ojson::array();
    for (const auto& ci : orbtri::cusp_covers(map, up_cusps, down_cusps))
      images.push_back({{"up", ci.up_class}, {"down", ci.down_class}});
    list.push_back({{"phi", map.phi}, {"cusp_images", images}});
  }
  ojson doc = {{"up", up.name()},
               {"down", down.name()},
               {"degree", up.size() / down.size()},
               {"count", found.size()},
               {"covers", list}};
  return emit(doc, found.empty() ? kNegative : kOk);
}

int cmd_orbifoldize(const std::string& path) {
  auto tri = io::load_gluing_table(path);
  auto orb = tetglue::des_seq(tri);
  orbtri::require_valid(orb.seq);
  ojson pieces = ojson::array();
  for (const auto& pair : orb.pieces) {
    ojson row = ojson::array();
    for (const auto& p : pair) row.push_back({p.i, p.j, p.k, p.l});
    pieces.push_back(row);
  }
  ojson doc = {{"name", orb.seq.name()},
               {"n", orb.seq.size()},
               {"entries", std::vector<int>(orb.seq.entries().begin(), orb.seq.entries().end())},
               {"pieces", pieces}};
  return emit(doc, kOk);
}

int cmd_symtest(const std::string& path, const std::string& mode, const cuspgeom::Tolerances& tol,
                cuspgeom::LabelPolicy policy, bool exhaustive) {
  auto diag = io::load_diagram(path);
  cuspgeom::require_valid(diag);
  ojson doc = {{"file", path}, {"mode", mode}};
  bool result = false;
  if (mode == "strong" || mode == "weak") {
    auto run = [&](std::optional<cuspgeom::Complex> c0) {
      return mode == "strong" ? cuspgeom::free_rot_strong_search(diag, tol, c0)
                              : cuspgeom::free_rot_weak_search(diag, tol, c0);
    };
    auto s = run(std::nullopt);
    result = s.result;
    doc["result"] = result;
    doc["c0"] = point(s.c0);
    ojson cands = ojson::array(), pass = ojson::array();
    for (auto z : s.candidates) cands.push_back(point(z));
    for (auto z : s.passing) pass.push_back(point(z));
    doc["candidates"] = cands;
    doc["passing"] = pass;
    if (exhaustive) {
      ojson dis = ojson::array();
      auto centers = cuspgeom::full_sized_centers(diag, tol);
      for (auto z : centers)
        if (bool r = run(z).result; r != result) dis.push_back({{"c0", point(z)}, {"result", r}});
      doc["c0_sensitivity"] = {{"checked", centers.size()}, {"disagreements", dis}};
    }
  } else if (mode == "full3") {
    auto s = cuspgeom::free_rot_strong_search(diag, tol);
    ojson checks = ojson::array();
    for (auto z : s.candidates) {
      auto c = cuspgeom::full_packing_check(diag, z, 3, tol, policy);
      result = result || c.holds;
      checks.push_back({{"center", point(z)},
                        {"holds", c.holds},
                        {"checked", c.checked},
                        {"unmatched", c.unmatched}});
    }
    doc["result"] = result;
    doc["candidates"] = checks;
  } else if (mode == "order6") {
    auto axes = cuspgeom::find_bad_order6_axes(diag, tol, policy);
    result = !axes.empty();
    ojson list = ojson::array();
    for (const auto& a : axes) list.push_back({{"center", point(a.center)}, {"cusp", a.cusp}});
    doc["result"] = result;
    doc["axes"] = list;
  } else {
    throw std::invalid_argument("unknown mode " + mode);
  }
  return emit(doc, result ? kOk : kNegative);
}

int cmd_homology(const std::string& path, int cusps) {
  auto h = homology::presented_homology(io::load_matrix(path));
  ojson div = ojson::array();
  for (const auto& d : h.divisors) {
    if (d <= std::numeric_limits<long long>::max() && d >= std::numeric_limits<long long>::min())
      div.push_back(static_cast<long long>(d));
    else
      div.push_back(d.str());
  }
  bool link = homology::is_homology_link(h, cusps);
  return emit({{"divisors", div}, {"rank", h.rank}, {"homology_link", link}},
              link ? kOk : kNegative);
}

int cmd_classify(const std::string& dir, const classify::Options& opts) {
  auto report = classify::classify_directory(dir, opts);
  std::cout << classify::to_json(report);
  for (const auto& m : report.manifolds)
    if (m.error) return kError;
  return classify::mismatches(report).empty() ? kOk : kNegative;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hidden-symmetry obstruction tests for tetrahedral link complements"};
  app.require_subcommand(1);

  cuspgeom::Tolerances tol;
  bool exhaustive = false;
  std::string policy_name = "class";
  app.add_option("--tolerance", tol.match, "center matching tolerance")->capture_default_str();
  app.add_option("--fullsize-cutoff", tol.fullsize_cutoff, "diameter counted as full-sized")
      ->capture_default_str();
  app.add_option("--hdiff-cutoff", tol.hdiff_cutoff, "smallest blocking other-cusp horoball")
      ->capture_default_str();
  app.add_flag("--exhaustive-c0", exhaustive, "rerun the strong/weak test from every full-sized center");
  app.add_option("--label-policy", policy_name, "full-packing label matching: strict, class, infinity")
      ->check(CLI::IsMember({"strict", "class", "infinity"}))
      ->capture_default_str();

  std::string a, b, mode;
  int cusps = 0;

  auto* validate = app.add_subcommand("validate", "check a file against its schema and invariants");
  validate->add_option("file", a)->required();
  auto* cusp = app.add_subcommand("cusps", "cusp classes of a destination sequence");
  cusp->add_option("dseq", a)->required();
  auto* cov = app.add_subcommand("covers", "all covers between two destination sequences");
  cov->add_option("up", a)->required();
  cov->add_option("down", b, "file, o236_2222 or o_v0_over_3")->required();
  auto* orb = app.add_subcommand("orbifoldize", "barycentric destination sequence of a gluing table");
  orb->add_option("table", a)->required();
  auto* sym = app.add_subcommand("symtest", "rotational symmetry tests on a cusp diagram");
  sym->add_option("diagram", a)->required();
  sym->add_option("--mode", mode)->required()->check(CLI::IsMember({"strong", "weak", "full3", "order6"}));
  auto* hom = app.add_subcommand("homology", "H1 from a relation matrix and the homology-link test");
  hom->add_option("matrix", a)->required();
  hom->add_option("cusps", cusps)->required();
  auto* cls = app.add_subcommand("classify", "run the exceptional-pair pipeline over a fixture tree");
  cls->add_option("dir", a)->required();

  CLI11_PARSE(app, argc, argv);

  static const std::map<std::string, cuspgeom::LabelPolicy> policies = {
      {"strict", cuspgeom::LabelPolicy::kStrict},
      {"class", cuspgeom::LabelPolicy::kInfinityClass},
      {"infinity", cuspgeom::LabelPolicy::kInfinityOnly}};
  const auto policy = policies.at(policy_name);

  try {
    if (*validate) return cmd_validate(a);
    if (*cusp) return cmd_cusps(a);
    if (*cov) return cmd_covers(a, b);
    if (*orb) return cmd_orbifoldize(a);
    if (*sym) return cmd_symtest(a, mode, tol, policy, exhaustive);
    if (*hom) return cmd_homology(a, cusps);
    if (*cls) {
      classify::Options opts;
      opts.tol = tol;
      opts.order6_policy = opts.full3_policy = policy;
      opts.exhaustive_c0 = exhaustive;
      return cmd_classify(a, opts);
    }
  } catch (const std::exception& e) {
    std::cout << ojson{{"error", e.what()}}.dump(2) << "\n";
    return kError;
  }
  return kError;
}
