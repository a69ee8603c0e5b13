#include "tetsym/tetglue.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include "json_util.hpp"
#include "union_find.hpp"

namespace tetsym::tetglue {

Perm4::Perm4(std::array<int, 4> images) {
  std::array<bool, 4> seen{};
  for (int v = 0; v < 4; ++v) {
    int x = images[v];
    if (x < 0 || x > 3 || seen[x]) throw std::invalid_argument("not a permutation of {0,1,2,3}");
    seen[x] = true;
    img_[v] = static_cast<std::uint8_t>(x);
  }
}

Perm4 Perm4::inverse() const {
  std::array<int, 4> inv{};
  for (int v = 0; v < 4; ++v) inv[img_[v]] = v;
  return Perm4(inv);
}

int Perm4::sign() const {
  int s = 1;
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b)
      if (img_[a] > img_[b]) s = -s;
  return s;
}

Perm4 operator*(const Perm4& a, const Perm4& b) {
  return Perm4({a[b[0]], a[b[1]], a[b[2]], a[b[3]]});
}

namespace {

std::string face_name(int tet, int face) {
  return "tetrahedron " + std::to_string(tet) + " face " + std::to_string(face);
}

int sign_of(int a, int b, int c, int d) { return Perm4({a, b, c, d}).sign(); }

}  // namespace

TetTriangulation::TetTriangulation(std::string name, std::vector<std::array<FaceGluing, 4>> gluings,
                                   std::optional<std::vector<std::array<int, 4>>> vertex_cusps)
    : name_(std::move(name)), gluings_(std::move(gluings)), vertex_cusps_(std::move(vertex_cusps)) {
  check();
}

void TetTriangulation::check() {
  const int r = size();
  if (r == 0) throw InvalidTriangulation(TableError::kMalformed, "triangulation has no tetrahedra");
  std::map<std::pair<int, int>, std::pair<int, int>> claimed;
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < 4; ++j) {
      const auto& g = gluings_[i][j];
      if (g.target == -1)
        throw InvalidTriangulation(TableError::kUngluedFace, face_name(i, j) + " is not glued");
      if (g.target < 0 || g.target >= r)
        throw InvalidTriangulation(TableError::kMalformed,
                                   face_name(i, j) + " targets missing tetrahedron " +
                                       std::to_string(g.target));
      int jj = g.perm[j];
      if (g.target == i && jj == j)
        throw InvalidTriangulation(TableError::kSelfGluedFace,
                                   face_name(i, j) + " is glued to itself");
      auto [it, fresh] = claimed.emplace(std::pair{g.target, jj}, std::pair{i, j});
      if (!fresh)
        throw InvalidTriangulation(TableError::kDuplicateGluing,
                                   face_name(g.target, jj) + " is claimed by both " +
                                       face_name(it->second.first, it->second.second) + " and " +
                                       face_name(i, j));
    }
  }
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < 4; ++j) {
      const auto& g = gluings_[i][j];
      const auto& back = gluings_[g.target][g.perm[j]];
      if (back.target != i || !(back.perm == g.perm.inverse()))
        throw InvalidTriangulation(TableError::kInvolution,
                                   face_name(i, j) + " -> " + face_name(g.target, g.perm[j]) +
                                       " is not inverted by the reverse gluing");
    }
  }
  orientation_.assign(r, 0);
  orientation_[0] = 1;
  std::deque<int> queue{0};
  int reached = 1;
  while (!queue.empty()) {
    int t = queue.front();
    queue.pop_front();
    for (int j = 0; j < 4; ++j) {
      const auto& g = gluings_[t][j];
      // Odd gluings join coherently oriented tetrahedra.
      int o = g.perm.sign() == -1 ? orientation_[t] : -orientation_[t];
      if (orientation_[g.target] == 0) {
        orientation_[g.target] = o;
        queue.push_back(g.target);
        ++reached;
      } else if (orientation_[g.target] != o) {
        throw InvalidTriangulation(TableError::kNonOrientable,
                                   "orientation conflict across " + face_name(t, j));
      }
    }
  }
  if (reached != r)
    throw InvalidTriangulation(TableError::kDisconnected,
                               "gluing graph reaches " + std::to_string(reached) + " of " +
                                   std::to_string(r) + " tetrahedra");
  if (vertex_cusps_) {
    if (static_cast<int>(vertex_cusps_->size()) != r)
      throw InvalidTriangulation(TableError::kCuspLabels, "cusp label table has wrong length");
    auto mc = manifold_cusp_classes(*this);
    (void)mc;
  }
}

namespace {

using detail::as_int;
using detail::as_string;
using detail::field;
using detail::json;

}  // namespace

TetTriangulation parse_gluing_table(std::string_view text) {
  json doc = detail::parse_json(text);
  std::string name = as_string(field(doc, "name", "$"), "$.name");
  long long r = as_int(field(doc, "tets", "$"), "$.tets");
  if (r <= 0) throw SchemaError("$.tets: must be positive");
  const json& rows = detail::array_at(field(doc, "gluings", "$"), r, "$.gluings");
  std::vector<std::array<FaceGluing, 4>> gluings(r);
  for (long long i = 0; i < r; ++i) {
    std::string pi = "$.gluings[" + std::to_string(i) + "]";
    const json& row = detail::array_at(rows[i], 4, pi);
    for (int j = 0; j < 4; ++j) {
      std::string pj = pi + "[" + std::to_string(j) + "]";
      const json& cell = detail::array_at(row[j], 2, pj);
      if (cell[0].is_null()) {
        gluings[i][j].target = -1;
        continue;
      }
      gluings[i][j].target = static_cast<int>(as_int(cell[0], pj + "[0]"));
      const json& p = detail::array_at(cell[1], 4, pj + "[1]");
      std::array<int, 4> img{};
      for (int v = 0; v < 4; ++v) img[v] = static_cast<int>(as_int(p[v], pj + "[1]"));
      try {
        gluings[i][j].perm = Perm4(img);
      } catch (const std::invalid_argument&) {
        throw SchemaError(pj + "[1]: not a permutation of {0,1,2,3}");
      }
    }
  }
  std::optional<std::vector<std::array<int, 4>>> cusps;
  if (auto it = doc.find("cusps"); it != doc.end()) {
    const json& c = detail::array_at(*it, r, "$.cusps");
    cusps.emplace(r);
    for (long long i = 0; i < r; ++i) {
      std::string pi = "$.cusps[" + std::to_string(i) + "]";
      const json& row = detail::array_at(c[i], 4, pi);
      for (int v = 0; v < 4; ++v) (*cusps)[i][v] = static_cast<int>(as_int(row[v], pi));
    }
  }
  return TetTriangulation(std::move(name), std::move(gluings), std::move(cusps));
}

std::string to_json(const TetTriangulation& tri) {
  json doc;
  doc["name"] = tri.name();
  doc["tets"] = tri.size();
  json rows = json::array();
  for (int i = 0; i < tri.size(); ++i) {
    json row = json::array();
    for (int j = 0; j < 4; ++j) {
      const auto& g = tri.gluing(i, j);
      row.push_back(json::array({g.target, {g.perm[0], g.perm[1], g.perm[2], g.perm[3]}}));
    }
    rows.push_back(row);
  }
  doc["gluings"] = rows;
  if (tri.vertex_cusps()) doc["cusps"] = *tri.vertex_cusps();
  return doc.dump();
}

namespace {

int piece_id(const Piece& p) { return ((p.i * 4 + p.j) * 4 + p.k) * 4 + p.l; }

Piece partner(const TetTriangulation& tri, const Piece& p) {
  const auto& g = tri.gluing(p.i, p.j);
  return {g.target, g.perm[p.j], g.perm[p.k], g.perm[p.l]};
}

Piece key_of(const TetTriangulation& tri, const Piece& p) { return std::min(p, partner(tri, p)); }

// Neighbours across the v, f0, f1 and e faces of the orbifold tetrahedron
// containing piece a. The v and e neighbours stay inside tetrahedron a.i; the
// faces opposite the two barycentres are f0 or f1 depending on orientation.
std::array<Piece, 4> neighbours(const TetTriangulation& tri, const Piece& a) {
  Piece b = partner(tri, a);
  int m = 6 - a.j - a.k - a.l;
  int mb = 6 - b.j - b.k - b.l;
  Piece v{a.i, a.j, a.l, a.k};
  Piece e{a.i, a.j, a.k, m};
  Piece opp_a{b.i, mb, b.k, b.l};  // across the face opposite the barycentre of tetrahedron a.i
  Piece opp_b{a.i, m, a.k, a.l};   // across the face opposite the barycentre of tetrahedron b.i
  bool a_is_f1 = sign_of(a.k, a.l, m, a.j) * tri.orientation(a.i) == -1;
  if (a_is_f1) return {v, opp_b, opp_a, e};
  return {v, opp_a, opp_b, e};
}

}  // namespace

OrbifoldTriangulation des_seq(const TetTriangulation& tri) {
  const int r = tri.size();
  const int n = 12 * r;
  std::vector<Piece> keys;
  keys.reserve(n);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k)
        for (int l = 0; l < 4; ++l) {
          if (j == k || k == l || j == l) continue;
          Piece p{i, j, k, l};
          if (key_of(tri, p) == p) keys.push_back(p);
        }
  if (static_cast<int>(keys.size()) != n)
    throw std::logic_error("barycentric subdivision produced " + std::to_string(keys.size()) +
                           " orbifold tetrahedra, expected " + std::to_string(n));

  std::vector<int> label(64 * r, -1);
  std::vector<Piece> order;
  order.reserve(n);
  auto assign = [&](const Piece& key) {
    int& slot = label[piece_id(key)];
    if (slot == -1) {
      slot = static_cast<int>(order.size());
      order.push_back(key);
    }
    return slot;
  };
  std::vector<int> entries(4 * n, -1);
  std::size_t next_seed = 0;  // keys are generated in lexicographic order
  std::size_t ptr = 0;
  while (ptr < static_cast<std::size_t>(n)) {
    if (ptr == order.size()) {
      while (label[piece_id(keys[next_seed])] != -1) ++next_seed;
      assign(keys[next_seed]);
    }
    Piece a = order[ptr++];
    int s = label[piece_id(a)];
    auto nb = neighbours(tri, a);
    for (int f = 0; f < 4; ++f) entries[4 * s + f] = assign(key_of(tri, nb[f]));
  }
  PieceTable pieces(n);
  for (int s = 0; s < n; ++s) pieces[s] = {order[s], partner(tri, order[s])};
  orbtri::DestinationSequence seq(tri.name(), std::move(entries));
  orbtri::require_valid(seq);
  return {std::move(seq), std::move(pieces)};
}

std::vector<CuspInfo> cusp_info(const TetTriangulation& tri, const PieceTable& pieces) {
  if (static_cast<int>(pieces.size()) != 12 * tri.size())
    throw std::invalid_argument("piece table does not belong to this triangulation");
  std::vector<CuspInfo> out;
  out.reserve(pieces.size());
  for (std::size_t s = 0; s < pieces.size(); ++s) {
    const auto& [a, b] = pieces[s];
    if (a.i >= tri.size() || b.i >= tri.size() || !(partner(tri, a) == b))
      throw std::invalid_argument("piece table does not belong to this triangulation");
    out.push_back({static_cast<int>(s), {a.i, a.k}, {b.i, b.k}});
  }
  return out;
}

ManifoldCuspClasses::ManifoldCuspClasses(int tets, std::vector<int> labels, int count)
    : labels_(std::move(labels)), count_(count) {
  if (static_cast<int>(labels_.size()) != 4 * tets)
    throw std::invalid_argument("one cusp label per ideal vertex required");
}

std::vector<std::vector<Incidence>> ManifoldCuspClasses::classes() const {
  std::vector<std::vector<Incidence>> out(count_);
  for (std::size_t x = 0; x < labels_.size(); ++x)
    out[labels_[x]].push_back({static_cast<int>(x / 4), static_cast<int>(x % 4)});
  return out;
}

ManifoldCuspClasses manifold_cusp_classes(const TetTriangulation& tri) {
  const int r = tri.size();
  detail::UnionFind uf(4 * r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < 4; ++j) {
      const auto& g = tri.gluing(i, j);
      for (int k = 0; k < 4; ++k)
        if (k != j) uf.unite(4 * i + k, 4 * g.target + g.perm[k]);
    }
  auto orbits = uf.classes();
  std::vector<int> labels(4 * r, -1);
  const int count = static_cast<int>(orbits.size());
  if (!tri.vertex_cusps()) {
    for (int c = 0; c < count; ++c)
      for (int x : orbits[c]) labels[x] = c;
    return ManifoldCuspClasses(r, std::move(labels), count);
  }
  const auto& given = *tri.vertex_cusps();
  std::vector<int> used(count, -1);
  for (int c = 0; c < count; ++c) {
    int lab = given[orbits[c][0] / 4][orbits[c][0] % 4];
    if (lab < 0 || lab >= count || used[lab] != -1)
      throw InvalidTriangulation(TableError::kCuspLabels,
                                 "cusp labels do not biject onto the " + std::to_string(count) +
                                     " vertex orbits");
    used[lab] = c;
    for (int x : orbits[c]) {
      if (given[x / 4][x % 4] != lab)
        throw InvalidTriangulation(TableError::kCuspLabels,
                                   "cusp label of tetrahedron " + std::to_string(x / 4) +
                                       " vertex " + std::to_string(x % 4) +
                                       " disagrees with its vertex orbit");
      labels[x] = lab;
    }
  }
  return ManifoldCuspClasses(r, std::move(labels), count);
}

int mfd_cusp_index(const std::vector<int>& orbifold_class, const PieceTable& pieces,
                   const ManifoldCuspClasses& mc) {
  if (orbifold_class.empty()) throw std::invalid_argument("empty orbifold cusp class");
  int lab = -1;
  for (int s : orbifold_class) {
    if (s < 0 || s >= static_cast<int>(pieces.size()))
      throw std::invalid_argument("orbifold tetrahedron " + std::to_string(s) + " out of range");
    for (const Piece& p : pieces[s]) {
      int x = mc.label(p.i, p.k);
      if (lab == -1) {
        lab = x;
      } else if (lab != x) {
        throw std::logic_error("orbifold cusp class straddles manifold cusps " +
                               std::to_string(lab) + " and " + std::to_string(x));
      }
    }
  }
  return lab;
}

}  // namespace tetsym::tetglue
