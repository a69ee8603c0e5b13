#include "tetsym/classify.hpp"

#include <algorithm>
#include <cmath>
#include <future>

#include "json_util.hpp"
#include "tetsym/io.hpp"
#include "tetsym/orbtri.hpp"
#include "tetsym/tetglue.hpp"

namespace tetsym::classify {

namespace fs = std::filesystem;
using detail::json;
using ojson = nlohmann::ordered_json;

namespace {

constexpr std::pair<Verdict, std::string_view> kNames[] = {
    {Verdict::kNotExceptional, "NOT_EXCEPTIONAL"},
    {Verdict::kE1, "E1"},
    {Verdict::kE2, "E2"},
    {Verdict::kE3, "E3"},
    {Verdict::kE4, "E4"},
    {Verdict::kUnresolved, "UNRESOLVED"},
};

std::vector<int> int_list(const json& v, const std::string& path) {
  detail::array_at(v, 0, path);
  std::vector<int> out;
  for (std::size_t k = 0; k < v.size(); ++k)
    out.push_back(static_cast<int>(detail::as_int(v[k], path + "[" + std::to_string(k) + "]")));
  return out;
}

std::vector<std::vector<int>> int_lists(const json& v, const std::string& path) {
  detail::array_at(v, 0, path);
  std::vector<std::vector<int>> out;
  for (std::size_t k = 0; k < v.size(); ++k)
    out.push_back(int_list(v[k], path + "[" + std::to_string(k) + "]"));
  return out;
}

bool is_permutation_of(const std::vector<int>& p, int n) {
  if (static_cast<int>(p.size()) != n) return false;
  std::vector<bool> seen(n, false);
  for (int x : p) {
    if (x < 0 || x >= n || seen[x]) return false;
    seen[x] = true;
  }
  return true;
}

fs::path existing(const fs::path& dir, const std::string& name, const std::string& path) {
  fs::path p = dir / name;
  if (!fs::is_regular_file(p)) throw SchemaError(path + ": file " + p.string() + " does not exist");
  return p;
}

ojson complex_json(cuspgeom::Complex z) {
  // Rounded so reports do not carry last-bit noise.
  auto r = [](double x) {
    double y = std::round(x * 1e9) / 1e9;
    return y == 0 ? 0.0 : y;
  };
  return ojson::array({r(z.real()), r(z.imag())});
}

std::string integer_string(const homology::Integer& x) { return x.str(); }

}  // namespace

std::string_view to_string(Verdict v) {
  for (const auto& [k, name] : kNames)
    if (k == v) return name;
  return "UNRESOLVED";
}

Verdict parse_verdict(std::string_view name) {
  for (const auto& [k, n] : kNames)
    if (n == name) return k;
  throw SchemaError("unknown verdict \"" + std::string(name) + "\"");
}

const DiagramRecord* FixtureRecord::diagram_for(int cusp) const {
  for (const auto& d : diagrams)
    if (d.cusp == cusp) return &d;
  return nullptr;
}

FixtureRecord load_fixture(const fs::path& dir) {
  const fs::path meta = dir / "meta.json";
  json doc;
  try {
    doc = detail::parse_json(io::read_text(meta));
  } catch (const SchemaError& e) {
    throw SchemaError(meta.string() + ": " + e.what());
  }
  FixtureRecord rec;
  rec.dir = dir;
  try {
    rec.manifold = detail::as_string(detail::field(doc, "manifold", "$"), "$.manifold");
    rec.census_index =
        static_cast<int>(detail::as_int(detail::field(doc, "census_index", "$"), "$.census_index"));
    rec.num_cusps =
        static_cast<int>(detail::as_int(detail::field(doc, "num_cusps", "$"), "$.num_cusps"));
    rec.num_tetrahedra = static_cast<int>(
        detail::as_int(detail::field(doc, "num_tetrahedra", "$"), "$.num_tetrahedra"));
    if (rec.num_cusps <= 0) throw SchemaError("$.num_cusps: must be positive");
    const int n = rec.num_cusps;

    const json& tris = detail::array_at(detail::field(doc, "triangulations", "$"), 0, "$.triangulations");
    if (tris.empty()) throw SchemaError("$.triangulations: at least one triangulation is required");
    for (std::size_t t = 0; t < tris.size(); ++t) {
      std::string p = "$.triangulations[" + std::to_string(t) + "]";
      TriangulationRecord tr;
      tr.table = existing(dir, detail::as_string(detail::field(tris[t], "table", p), p + ".table"), p + ".table");
      tr.dseq = existing(dir, detail::as_string(detail::field(tris[t], "dseq", p), p + ".dseq"), p + ".dseq");
      if (tris[t].contains("isosig")) tr.isosig = detail::as_string(tris[t]["isosig"], p + ".isosig");
      tr.cusp_map = int_list(detail::field(tris[t], "cusp_map", p), p + ".cusp_map");
      if (!is_permutation_of(tr.cusp_map, n))
        throw SchemaError(p + ".cusp_map: not a permutation of the " + std::to_string(n) + " cusps");
      rec.triangulations.push_back(std::move(tr));
    }

    const json& diags = detail::array_at(detail::field(doc, "diagrams", "$"), 0, "$.diagrams");
    for (std::size_t k = 0; k < diags.size(); ++k) {
      std::string p = "$.diagrams[" + std::to_string(k) + "]";
      DiagramRecord dr;
      dr.cusp = static_cast<int>(detail::as_int(detail::field(diags[k], "cusp", p), p + ".cusp"));
      if (dr.cusp < 0 || dr.cusp >= n) throw SchemaError(p + ".cusp: out of range");
      if (rec.diagram_for(dr.cusp)) throw SchemaError(p + ".cusp: duplicate diagram");
      dr.file = existing(dir, detail::as_string(detail::field(diags[k], "file", p), p + ".file"), p + ".file");
      if (diags[k].contains("maximization_order"))
        dr.maximization_order = int_list(diags[k]["maximization_order"], p + ".maximization_order");
      rec.diagrams.push_back(std::move(dr));
    }

    rec.homology = existing(dir, detail::as_string(detail::field(doc, "homology", "$"), "$.homology"),
                            "$.homology");

    rec.isometry_cusp_images =
        int_lists(detail::field(doc, "isometry_cusp_images", "$"), "$.isometry_cusp_images");
    for (std::size_t k = 0; k < rec.isometry_cusp_images.size(); ++k)
      if (!is_permutation_of(rec.isometry_cusp_images[k], n))
        throw SchemaError("$.isometry_cusp_images[" + std::to_string(k) + "]: not a permutation");

    if (doc.contains("symmetry_classes"))
      rec.symmetry_classes = int_lists(doc["symmetry_classes"], "$.symmetry_classes");
    if (doc.contains("cusp_list")) rec.cusp_list = int_list(doc["cusp_list"], "$.cusp_list");

    if (doc.contains("expected")) {
      const json& ex = doc["expected"];
      if (!ex.is_object()) throw SchemaError("$.expected: expected an object");
      for (auto it = ex.begin(); it != ex.end(); ++it) {
        std::string p = "$.expected." + it.key();
        int c;
        try {
          std::size_t used = 0;
          c = std::stoi(it.key(), &used);
          if (used != it.key().size()) throw std::invalid_argument("");
        } catch (const std::exception&) {
          throw SchemaError(p + ": key is not a cusp index");
        }
        if (c < 0 || c >= n) throw SchemaError(p + ": cusp out of range");
        rec.expected[c] = parse_verdict(detail::as_string(it.value(), p));
      }
    }
  } catch (const SchemaError& e) {
    throw SchemaError(meta.string() + ": " + e.what());
  }
  return rec;
}

std::vector<int> cusp_list(int num_cusps, const std::vector<std::vector<int>>& cusp_images) {
  std::vector<bool> dropped(num_cusps, false);
  for (const auto& g : cusp_images)
    for (int i = 0; i < num_cusps; ++i)
      if (g[i] > i && g[g[i]] == i) dropped[g[i]] = true;
  std::vector<int> out;
  for (int i = 0; i < num_cusps; ++i)
    if (!dropped[i]) out.push_back(i);
  return out;
}

Adjustments Adjustments::published() {
  Adjustments a;
  a.add_to_e1 = {{"otet20_01414", 2}, {"otet20_01438", 2}};
  a.remove_from_e4 = {{"otet20_01414", 2}, {"otet20_01414", 3},
                      {"otet20_01438", 2}, {"otet20_01438", 3}};
  return a;
}

namespace {

// Representative in the list for every cusp, following the isometries.
std::map<int, int> representatives(int n, const std::vector<std::vector<int>>& images,
                                   const std::vector<int>& list) {
  std::map<int, int> rep;
  for (int c : list) rep[c] = c;
  for (int c = 0; c < n; ++c) {
    if (rep.count(c)) continue;
    for (int r : list) {
      bool hit = std::any_of(images.begin(), images.end(),
                             [&](const std::vector<int>& g) { return g[r] == c; });
      if (hit) {
        rep[c] = r;
        break;
      }
    }
  }
  return rep;
}

std::vector<CoverEvidence> cover_search(const FixtureRecord& rec) {
  const auto& down = orbtri::o236_2222();
  const auto down_cusps = orbtri::cusp_seqs(down);
  const int rigid = down_cusps.class_of(orbtri::o236_2222_rigid_cusp().front());
  std::vector<CoverEvidence> out;
  for (std::size_t t = 0; t < rec.triangulations.size(); ++t) {
    const auto& tr = rec.triangulations[t];
    auto table = io::load_gluing_table(tr.table);
    auto orb = tetglue::des_seq(table);
    auto committed = io::load_dseq(tr.dseq);
    if (!(orb.seq == committed) &&
        (orb.seq.size() != committed.size() || orbtri::covers(orb.seq, committed).empty()))
      throw std::runtime_error(tr.dseq.string() +
                               ": does not match the orbifold triangulation of " +
                               tr.table.string());
    auto mc = tetglue::manifold_cusp_classes(table);
    auto up_cusps = orbtri::cusp_seqs(orb.seq);
    if (mc.count() != rec.num_cusps || up_cusps.count() != rec.num_cusps)
      throw std::runtime_error(tr.table.string() + ": cusp count differs from num_cusps");
    for (const auto& map : orbtri::covers(orb.seq, down)) {
      std::vector<int> cusps;
      for (int k : orbtri::preimage_classes(map, up_cusps, down_cusps, rigid)) {
        int c = tetglue::mfd_cusp_index(up_cusps.classes()[k], orb.pieces, mc);
        cusps.push_back(tr.cusp_map[c]);
      }
      std::sort(cusps.begin(), cusps.end());
      cusps.erase(std::unique(cusps.begin(), cusps.end()), cusps.end());
      out.push_back({static_cast<int>(t), map.phi.front(), std::move(cusps)});
    }
  }
  return out;
}

}  // namespace

ManifoldReport classify_manifold(const FixtureRecord& rec, const Options& opts) {
  ManifoldReport rep;
  rep.manifold = rec.manifold;
  rep.census_index = rec.census_index;

  auto h = homology::presented_homology(io::load_matrix(rec.homology));
  rep.homology = h.divisors;
  if (rec.num_cusps < 2) {
    rep.skipped = "fewer than two cusps";
    return rep;
  }
  if (!homology::is_homology_link(h, rec.num_cusps)) {
    rep.skipped = "not a homology link complement";
    return rep;
  }

  rep.cusp_list = cusp_list(rec.num_cusps, rec.isometry_cusp_images);
  if (rec.cusp_list && *rec.cusp_list != rep.cusp_list)
    throw SchemaError((rec.dir / "meta.json").string() +
                      ": $.cusp_list disagrees with the isometry cusp images");
  for (auto [c, r] : representatives(rec.num_cusps, rec.isometry_cusp_images, rep.cusp_list))
    if (c != r) rep.represented_by[c] = r;

  struct Geometry {
    cuspgeom::CuspDiagram diag;
    cuspgeom::RotationSearch search;
  };
  std::map<int, Geometry> geo;
  for (int c : rep.cusp_list) {
    const DiagramRecord* dr = rec.diagram_for(c);
    if (!dr) throw SchemaError(rec.manifold + ": no diagram for cusp " + std::to_string(c));
    auto diag = io::load_diagram(dr->file);
    if (diag.cusp_at_infinity != c)
      throw SchemaError(dr->file.string() + ": cusp at infinity is not " + std::to_string(c));
    auto search = cuspgeom::free_rot_strong_search(diag, opts.tol);
    if (search.result) rep.exceptional_cusps.push_back(c);
    geo.emplace(c, Geometry{std::move(diag), std::move(search)});
  }

  rep.covers = cover_search(rec);
  std::optional<CoverEvidence> good;
  for (const auto& ce : rep.covers)
    if (ce.rigid_cusps.size() == 1) {
      good = ce;
      break;
    }
  const bool single = rep.exceptional_cusps.size() == 1;

  for (int c : rep.cusp_list) {
    const Geometry& g = geo.at(c);
    CuspResult res;
    res.cusp = c;
    res.strong = g.search.result;
    res.c0 = g.search.c0;
    res.strong_candidates = static_cast<int>(g.search.candidates.size());
    res.strong_passing = static_cast<int>(g.search.passing.size());
    if (auto it = rec.expected.find(c); it != rec.expected.end()) res.expected = it->second;

    if (opts.exhaustive_c0) {
      auto centers = cuspgeom::full_sized_centers(g.diag, opts.tol);
      res.c0_checked = static_cast<int>(centers.size());
      for (auto z : centers) {
        bool r = cuspgeom::free_rot_strong_search(g.diag, opts.tol, z).result;
        if (r != res.strong) res.c0_disagreements.push_back({z, r});
      }
    }

    const auto key = std::make_pair(rec.manifold, c);
    if (!res.strong) {
      res.verdict = Verdict::kNotExceptional;
      res.reason = "free_rot_strong negative";
    } else if (opts.adjustments.add_to_e1.count(key)) {
      res.verdict = Verdict::kE1;
      res.adjusted = true;
      res.good_cover = good;
      res.reason = "hand adjustment: added to E1";
    } else if (good && single) {
      res.verdict = Verdict::kE1;
      res.good_cover = good;
      res.reason = "good cover and the only exceptional cusp";
    } else if (good && !opts.adjustments.remove_from_e4.count(key)) {
      res.verdict = Verdict::kE4;
      res.good_cover = good;
      res.reason = "good cover and several exceptional cusps";
    } else {
      res.adjusted = good.has_value();
      auto axes = cuspgeom::find_bad_order6_axes(g.diag, opts.tol, opts.order6_policy);
      res.order6_axes = axes;
      if (!axes.empty()) {
        res.verdict = Verdict::kE2;
        res.reason = "order-6 axis through a full-packing symmetry";
      } else {
        int passing = 0;
        for (auto e : g.search.candidates)
          passing += cuspgeom::full_packing_rotation_test(g.diag, e, 3, opts.tol, opts.full3_policy);
        res.full3_passing = passing;
        res.full3_checked = static_cast<int>(g.search.candidates.size());
        if (passing == 0) {
          res.verdict = Verdict::kE3;
          res.reason = "no order-3 candidate extends to the full packing";
        } else {
          res.verdict = Verdict::kUnresolved;
          res.reason = "an order-3 candidate extends to the full packing";
        }
      }
    }
    rep.cusps.push_back(std::move(res));
  }
  return rep;
}

Report classify_directory(const fs::path& root, const Options& opts) {
  std::vector<fs::path> dirs;
  if (fs::is_regular_file(root / "meta.json")) dirs.push_back(root);
  if (fs::is_directory(root))
    for (const auto& e : fs::recursive_directory_iterator(root))
      if (e.is_directory() && fs::is_regular_file(e.path() / "meta.json")) dirs.push_back(e.path());
  if (dirs.empty()) throw std::runtime_error(root.string() + ": no meta.json found");
  std::sort(dirs.begin(), dirs.end());

  std::vector<std::future<ManifoldReport>> jobs;
  for (const auto& d : dirs)
    jobs.push_back(std::async(std::launch::async, [d, &opts] {
      try {
        return classify_manifold(load_fixture(d), opts);
      } catch (const std::exception& e) {
        ManifoldReport r;
        r.manifold = d.filename().string();
        r.census_index = -1;
        r.error = e.what();
        return r;
      }
    }));
  Report report;
  for (auto& j : jobs) report.manifolds.push_back(j.get());
  std::stable_sort(report.manifolds.begin(), report.manifolds.end(),
                   [](const ManifoldReport& a, const ManifoldReport& b) {
                     return std::tie(a.census_index, a.manifold) <
                            std::tie(b.census_index, b.manifold);
                   });
  return report;
}

std::vector<std::string> mismatches(const Report& report) {
  std::vector<std::string> out;
  for (const auto& m : report.manifolds) {
    if (m.error) out.push_back(m.manifold + ": " + *m.error);
    for (const auto& c : m.cusps)
      if (c.expected && *c.expected != c.verdict)
        out.push_back(m.manifold + ":" + std::to_string(c.cusp) + " expected " +
                      std::string(to_string(*c.expected)) + ", got " +
                      std::string(to_string(c.verdict)));
  }
  return out;
}

std::string to_json(const Report& report) {
  ojson manifolds = ojson::array();
  for (const auto& m : report.manifolds) {
    ojson jm;
    jm["manifold"] = m.manifold;
    jm["census_index"] = m.census_index;
    if (m.error) {
      jm["error"] = *m.error;
      manifolds.push_back(jm);
      continue;
    }
    ojson hom = ojson::array();
    for (const auto& d : m.homology) hom.push_back(integer_string(d));
    jm["homology"] = hom;
    if (m.skipped) {
      jm["skipped"] = *m.skipped;
      manifolds.push_back(jm);
      continue;
    }
    jm["cusp_list"] = m.cusp_list;
    ojson rb = ojson::object();
    for (auto [c, r] : m.represented_by) rb[std::to_string(c)] = r;
    jm["represented_by"] = rb;
    jm["exceptional_cusps"] = m.exceptional_cusps;
    ojson covers = ojson::array();
    for (const auto& ce : m.covers)
      covers.push_back({{"triangulation", ce.triangulation},
                        {"seed", ce.seed},
                        {"rigid_cusps", ce.rigid_cusps}});
    jm["covers"] = covers;
    ojson cusps = ojson::array();
    for (const auto& c : m.cusps) {
      ojson jc;
      jc["cusp"] = c.cusp;
      jc["verdict"] = to_string(c.verdict);
      if (c.expected) {
        jc["expected"] = to_string(*c.expected);
        jc["matches_expected"] = *c.expected == c.verdict;
      }
      ojson ev;
      ev["reason"] = c.reason;
      ev["free_rot_strong"] = {{"result", c.strong},
                               {"c0", complex_json(c.c0)},
                               {"candidates", c.strong_candidates},
                               {"passing", c.strong_passing}};
      if (c.good_cover)
        ev["good_cover"] = {{"triangulation", c.good_cover->triangulation},
                            {"seed", c.good_cover->seed},
                            {"rigid_cusps", c.good_cover->rigid_cusps}};
      if (c.adjusted) ev["adjusted"] = true;
      if (c.order6_axes) {
        ojson axes = ojson::array();
        for (const auto& a : *c.order6_axes)
          axes.push_back({{"center", complex_json(a.center)}, {"cusp", a.cusp}});
        ev["order6_axes"] = axes;
      }
      if (c.full3_checked)
        ev["full3"] = {{"candidates", *c.full3_checked}, {"passing", *c.full3_passing}};
      if (c.c0_checked) {
        ojson dis = ojson::array();
        for (const auto& d : c.c0_disagreements)
          dis.push_back({{"c0", complex_json(d.c0)}, {"result", d.result}});
        ev["c0_sensitivity"] = {{"checked", *c.c0_checked}, {"disagreements", dis}};
      }
      jc["evidence"] = ev;
      cusps.push_back(jc);
    }
    jm["cusps"] = cusps;
    manifolds.push_back(jm);
  }
  ojson doc;
  doc["manifolds"] = manifolds;
  return doc.dump(2) + "\n";
}

}  // namespace tetsym::classify
