#include "tetsym/orbtri.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "union_find.hpp"

namespace tetsym::orbtri {

DestinationSequence::DestinationSequence(std::string name, std::vector<int> entries)
    : name_(std::move(name)), entries_(std::move(entries)) {
  if (entries_.empty() || entries_.size() % 4 != 0)
    throw InvalidSequence("destination sequence length must be a positive multiple of 4, got " +
                          std::to_string(entries_.size()));
  const int n = size();
  for (std::size_t p = 0; p < entries_.size(); ++p) {
    if (entries_[p] < 0 || entries_[p] >= n)
      throw InvalidSequence("entry " + std::to_string(p) + " = " + std::to_string(entries_[p]) +
                            " is outside [0, " + std::to_string(n) + ")");
  }
}

ValidationReport validate(const DestinationSequence& seq) {
  ValidationReport rep;
  const int n = seq.size();
  auto fail = [&](const char* family, int i, int slot, int back) {
    rep.violations.push_back({family, i,
                              "entries[" + std::to_string(4 * i + slot) + "] = " +
                                  std::to_string(seq.at(4 * i + slot)) + " but back-reference is " +
                                  std::to_string(back)});
  };
  for (int i = 0; i < n; ++i) {
    int b = seq.target(seq.target(i, kV), kV);
    if (b != i) fail("v-involution", i, kV, b);
    b = seq.target(seq.target(i, kF0), kF1);
    if (b != i) fail("f-pairing", i, kF0, b);
    b = seq.target(seq.target(i, kF1), kF0);
    if (b != i) fail("f-pairing", i, kF1, b);
    b = seq.target(seq.target(i, kE), kE);
    if (b != i) fail("e-involution", i, kE, b);
  }
  detail::UnionFind uf(n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < 4; ++k) uf.unite(i, seq.target(i, k));
  auto comps = uf.classes();
  if (comps.size() > 1)
    rep.violations.push_back({"connectivity", -1,
                              "gluing graph has " + std::to_string(comps.size()) + " components"});
  return rep;
}

void require_valid(const DestinationSequence& seq) {
  auto rep = validate(seq);
  if (rep.ok()) return;
  std::string msg = "invalid destination sequence '" + seq.name() + "':";
  for (std::size_t k = 0; k < rep.violations.size() && k < 5; ++k) {
    const auto& v = rep.violations[k];
    msg += " [" + v.family + " at " + std::to_string(v.index) + ": " + v.detail + "]";
  }
  if (rep.violations.size() > 5)
    msg += " (+" + std::to_string(rep.violations.size() - 5) + " more)";
  throw InvalidSequence(msg);
}

CuspPartition::CuspPartition(std::vector<std::vector<int>> classes, int n)
    : classes_(std::move(classes)), owner_(n, -1) {
  for (std::size_t c = 0; c < classes_.size(); ++c) {
    for (int t : classes_[c]) {
      if (t < 0 || t >= n || owner_[t] != -1)
        throw std::invalid_argument("cusp partition is not a partition of [0, n)");
      owner_[t] = static_cast<int>(c);
    }
  }
  if (std::find(owner_.begin(), owner_.end(), -1) != owner_.end())
    throw std::invalid_argument("cusp partition misses some tetrahedra");
}

CuspPartition cusp_seqs(const DestinationSequence& seq) {
  const int n = seq.size();
  detail::UnionFind uf(n);
  for (int i = 0; i < n; ++i)
    for (int k : {kF0, kF1, kE}) uf.unite(i, seq.target(i, k));
  return CuspPartition(uf.classes(), n);
}

bool is_cover(const CoverMap& map, const DestinationSequence& up, const DestinationSequence& down) {
  const int nu = up.size(), nd = down.size();
  if (static_cast<int>(map.phi.size()) != nu || nu % nd != 0) return false;
  std::vector<int> fiber(nd, 0);
  for (int x : map.phi) {
    if (x < 0 || x >= nd) return false;
    ++fiber[x];
  }
  for (int f : fiber)
    if (f != nu / nd) return false;
  for (int i = 0; i < nu; ++i)
    for (int k = 0; k < 4; ++k)
      if (map.phi[up.target(i, k)] != down.target(map.phi[i], k)) return false;
  return true;
}

namespace {

// The map is forced by phi[0] because the gluing graph is connected.
bool propagate(const DestinationSequence& up, const DestinationSequence& down, int seed,
               std::vector<int>& phi) {
  const int nu = up.size();
  phi.assign(nu, -1);
  phi[0] = seed;
  std::deque<int> queue{0};
  while (!queue.empty()) {
    int i = queue.front();
    queue.pop_front();
    for (int k = 0; k < 4; ++k) {
      int t = up.target(i, k);
      int img = down.target(phi[i], k);
      if (phi[t] == -1) {
        phi[t] = img;
        queue.push_back(t);
      } else if (phi[t] != img) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace

std::vector<CoverMap> covers(const DestinationSequence& up, const DestinationSequence& down) {
  require_valid(up);
  require_valid(down);
  std::vector<CoverMap> out;
  if (up.size() % down.size() != 0) return out;
  std::vector<int> phi;
  for (int s = 0; s < down.size(); ++s) {
    if (!propagate(up, down, s, phi)) continue;
    CoverMap m{phi};
    if (is_cover(m, up, down)) out.push_back(std::move(m));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<CuspImage> cusp_covers(const CoverMap& map, const CuspPartition& up,
                                   const CuspPartition& down) {
  if (static_cast<int>(map.phi.size()) != up.size())
    throw std::invalid_argument("cover and up partition have different sizes");
  std::vector<CuspImage> out;
  for (int c = 0; c < up.count(); ++c) {
    int image = -1;
    for (int t : up.classes()[c]) {
      int x = map.phi[t];
      if (x < 0 || x >= down.size())
        throw std::invalid_argument("cover value out of range for down partition");
      int d = down.class_of(x);
      if (image == -1) {
        image = d;
      } else if (image != d) {
        throw std::logic_error("cusp class " + std::to_string(c) +
                               " straddles two down classes; the map is not a cover");
      }
    }
    out.push_back({c, image});
  }
  return out;
}

std::vector<int> preimage_classes(const CoverMap& map, const CuspPartition& up,
                                  const CuspPartition& down, int down_class) {
  std::vector<int> out;
  for (const auto& img : cusp_covers(map, up, down))
    if (img.down_class == down_class) out.push_back(img.up_class);
  return out;
}

std::vector<CoverMap> automorphisms(const DestinationSequence& seq) { return covers(seq, seq); }

CoverMap compose(const CoverMap& a, const CoverMap& b) {
  CoverMap out;
  out.phi.resize(b.phi.size());
  for (std::size_t i = 0; i < b.phi.size(); ++i) out.phi[i] = a.phi[b.phi[i]];
  return out;
}

CoverMap inverse(const CoverMap& a) {
  CoverMap out;
  out.phi.assign(a.phi.size(), -1);
  for (std::size_t i = 0; i < a.phi.size(); ++i) {
    if (out.phi[a.phi[i]] != -1) throw std::invalid_argument("map is not a bijection");
    out.phi[a.phi[i]] = static_cast<int>(i);
  }
  return out;
}

const DestinationSequence& o236_2222() {
  static const DestinationSequence seq(
      "O236_2222", {0, 0, 0, 1, 2, 3, 4, 0, 1, 5, 6, 2, 6, 4, 1, 4, 5, 1, 3, 3,
                    4, 6, 2, 7, 3, 2, 5, 8, 8, 8, 9, 5, 7, 9, 7, 6, 9, 7, 8, 9});
  return seq;
}

const std::vector<int>& o236_2222_rigid_cusp() {
  static const std::vector<int> c{0, 1, 3, 4};
  return c;
}

const DestinationSequence& o_v0_over_3() {
  static const DestinationSequence seq("O_v0_3", {0, 1, 1, 0, 1, 0, 0, 2, 3, 2, 2, 1, 2, 3, 3, 3});
  return seq;
}

const std::vector<int>& o_v0_over_3_rigid_cusp() {
  static const std::vector<int> c{3};
  return c;
}

}  // namespace tetsym::orbtri
