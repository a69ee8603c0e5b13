#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace tetsym::orbtri {

// Slot of a face inside the 4-entry block of an orbifold tetrahedron.
enum Face : int { kV = 0, kF0 = 1, kF1 = 2, kE = 3 };

class InvalidSequence : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Orbifold triangulation by copies of the PGL2(O3) fundamental tetrahedron.
// entries[4i..4i+3] are the tetrahedra glued to the v, f0, f1 and e faces of i.
class DestinationSequence {
 public:
  DestinationSequence() = default;
  // Checks shape only (length 4n, values in range); gluing rules go through validate().
  DestinationSequence(std::string name, std::vector<int> entries);

  int size() const { return static_cast<int>(entries_.size() / 4); }
  int target(int i, int face) const { return entries_[4 * i + face]; }
  int at(int pos) const { return entries_[pos]; }
  std::span<const int> entries() const { return entries_; }
  const std::string& name() const { return name_; }

  // Volume in units of the regular ideal tetrahedron volume v0 (each piece is v0/12).
  double volume_in_v0() const { return size() / 12.0; }

  bool operator==(const DestinationSequence& o) const { return entries_ == o.entries_; }

 private:
  std::string name_;
  std::vector<int> entries_;
};

struct Violation {
  std::string family;  // "v-involution", "f-pairing", "e-involution" or "connectivity"
  int index;           // offending tetrahedron (-1 for connectivity)
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

ValidationReport validate(const DestinationSequence& seq);

// Throws InvalidSequence listing the first violations.
void require_valid(const DestinationSequence& seq);

class CuspPartition {
 public:
  CuspPartition() = default;
  CuspPartition(std::vector<std::vector<int>> classes, int n);

  const std::vector<std::vector<int>>& classes() const { return classes_; }
  int count() const { return static_cast<int>(classes_.size()); }
  int size() const { return static_cast<int>(owner_.size()); }
  int class_of(int tet) const { return owner_[tet]; }
  bool operator==(const CuspPartition& o) const { return classes_ == o.classes_; }

 private:
  std::vector<std::vector<int>> classes_;
  std::vector<int> owner_;
};

// Components of the graph joining i to its f0, f1 and e neighbours; the v face
// is opposite the ideal vertex and does not link cusp cross-sections.
CuspPartition cusp_seqs(const DestinationSequence& seq);

struct CoverMap {
  std::vector<int> phi;
  bool operator==(const CoverMap& o) const { return phi == o.phi; }
  auto operator<=>(const CoverMap& o) const { return phi <=> o.phi; }
};

// Full re-verification of the gluing and fiber-size constraints.
bool is_cover(const CoverMap& map, const DestinationSequence& up, const DestinationSequence& down);

// All label-preserving covers up -> down, sorted by phi. Both inputs must be valid.
std::vector<CoverMap> covers(const DestinationSequence& up, const DestinationSequence& down);

struct CuspImage {
  int up_class;    // index into the up partition
  int down_class;  // index into the down partition
};

// Image class of every up cusp class under the cover.
std::vector<CuspImage> cusp_covers(const CoverMap& map, const CuspPartition& up,
                                   const CuspPartition& down);

// Up classes sent into the given down class.
std::vector<int> preimage_classes(const CoverMap& map, const CuspPartition& up,
                                  const CuspPartition& down, int down_class);

std::vector<CoverMap> automorphisms(const DestinationSequence& seq);

// (a after b)[i] = a[b[i]]
CoverMap compose(const CoverMap& a, const CoverMap& b);
CoverMap inverse(const CoverMap& a);

// O_{(2,3,6),(2,2,2,2)}: two cusps, the rigid one is class [0,1,3,4].
const DestinationSequence& o236_2222();
const std::vector<int>& o236_2222_rigid_cusp();

// The orbifold of volume v0/3 used for the 6^2_2 family; its rigid cusp is [3].
const DestinationSequence& o_v0_over_3();
const std::vector<int>& o_v0_over_3_rigid_cusp();

}  // namespace tetsym::orbtri
