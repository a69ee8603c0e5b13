#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "tetsym/orbtri.hpp"

namespace tetsym::tetglue {

class Perm4 {
 public:
  constexpr Perm4() : img_{0, 1, 2, 3} {}
  // Throws std::invalid_argument unless the images are a permutation of 0..3.
  explicit Perm4(std::array<int, 4> images);

  int operator[](int v) const { return img_[v]; }
  Perm4 inverse() const;
  int sign() const;
  // (a * b)[v] = a[b[v]]
  friend Perm4 operator*(const Perm4& a, const Perm4& b);
  bool operator==(const Perm4&) const = default;

 private:
  std::array<std::uint8_t, 4> img_;
};

struct FaceGluing {
  int target = -1;
  Perm4 perm;  // perm[v] is the vertex of the target that v is glued to
};

enum class TableError {
  kMalformed,
  kUngluedFace,
  kSelfGluedFace,
  kDuplicateGluing,
  kInvolution,
  kNonOrientable,
  kDisconnected,
  kCuspLabels,
};

class InvalidTriangulation : public std::runtime_error {
 public:
  InvalidTriangulation(TableError kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  TableError kind() const { return kind_; }

 private:
  TableError kind_;
};

// Ideal triangulation given by its face gluings. Face j of a tetrahedron is the
// face opposite vertex j.
class TetTriangulation {
 public:
  // Validates on construction and throws InvalidTriangulation.
  TetTriangulation(std::string name, std::vector<std::array<FaceGluing, 4>> gluings,
                   std::optional<std::vector<std::array<int, 4>>> vertex_cusps = std::nullopt);

  int size() const { return static_cast<int>(gluings_.size()); }
  const FaceGluing& gluing(int tet, int face) const { return gluings_[tet][face]; }
  const std::string& name() const { return name_; }
  // +1 or -1 per tetrahedron; tetrahedron 0 is positive.
  int orientation(int tet) const { return orientation_[tet]; }
  // Cusp label of each ideal vertex as supplied by the exporter, if any.
  const std::optional<std::vector<std::array<int, 4>>>& vertex_cusps() const {
    return vertex_cusps_;
  }

 private:
  void check();

  std::string name_;
  std::vector<std::array<FaceGluing, 4>> gluings_;
  std::optional<std::vector<std::array<int, 4>>> vertex_cusps_;
  std::vector<int> orientation_;
};

// JSON gluing table: {"name", "tets", "gluings": [[[target, [p0,p1,p2,p3]] x4] x r], "cusps"?}
TetTriangulation parse_gluing_table(std::string_view text);
std::string to_json(const TetTriangulation& tri);

// One of the 24 barycentric pieces of a tetrahedron: tetrahedron i, face j,
// ideal vertex k, edge partner l, with j, k, l distinct.
struct Piece {
  int i, j, k, l;
  auto operator<=>(const Piece&) const = default;
};

// Orbifold tetrahedron s is the union of pieces[s][0] (the lexicographically
// smaller one) and pieces[s][1], glued across face j.
using PieceTable = std::vector<std::array<Piece, 2>>;

struct OrbifoldTriangulation {
  orbtri::DestinationSequence seq;
  PieceTable pieces;
};

OrbifoldTriangulation des_seq(const TetTriangulation& tri);

struct Incidence {
  int tet;
  int vertex;
  bool operator==(const Incidence&) const = default;
};

struct CuspInfo {
  int s;
  Incidence a, b;
};

std::vector<CuspInfo> cusp_info(const TetTriangulation& tri, const PieceTable& pieces);

class ManifoldCuspClasses {
 public:
  ManifoldCuspClasses(int tets, std::vector<int> labels, int count);

  int label(int tet, int vertex) const { return labels_[4 * tet + vertex]; }
  int count() const { return count_; }
  std::vector<std::vector<Incidence>> classes() const;

 private:
  std::vector<int> labels_;
  int count_;
};

// Orbits of ideal vertices under the face gluings. Labels follow the minimum
// representative unless the table carries exporter labels, which are checked
// against the orbits and then used.
ManifoldCuspClasses manifold_cusp_classes(const TetTriangulation& tri);

// Manifold cusp containing every incidence of the orbifold class; throws
// std::logic_error when the class straddles two manifold cusps.
int mfd_cusp_index(const std::vector<int>& orbifold_class, const PieceTable& pieces,
                   const ManifoldCuspClasses& mc);

}  // namespace tetsym::tetglue
