#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace tetsym::cuspgeom {

using Complex = std::complex<double>;

struct Horoball {
  Complex center;
  double diameter;
  int cusp;
};

// One cusp's maximal horoball packing seen from that cusp placed at infinity.
struct CuspDiagram {
  std::string manifold;
  int cusp_at_infinity = 0;
  int num_cusps = 1;
  Complex meridian;
  Complex longitude;
  double cusp_volume = 0;
  double export_cutoff = 0;
  std::vector<Horoball> horoballs;
};

class InvalidDiagram : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Broken invariants, empty when the diagram is usable.
std::vector<std::string> diagram_problems(const CuspDiagram& diag);
void require_valid(const CuspDiagram& diag);

CuspDiagram parse_diagram(std::string_view text);
std::string to_json(const CuspDiagram& diag);

struct Tolerances {
  double match = 0.005;          // distance below which two centers agree
  double fullsize_cutoff = 0.9;  // diameter counted as full-sized
  double hdiff_cutoff = 0.1;     // smallest other-cusp horoball that blocks a rotation center
  double diameter = 0.01;        // "same size" in the full-packing tests
};

struct LatticeConstants {
  double theta;  // angle between meridian and longitude
  double d;      // max(|m|, |l|, |m+l|, |m-l|)
  double area;   // |Im(conj(m) l)|
};

LatticeConstants lattice_constants(const CuspDiagram& diag);

struct CoverageCounts {
  int kh, k, kl;
  bool operator==(const CoverageCounts&) const = default;
};

CoverageCounts coverage_counts(double x, const CuspDiagram& diag);

// Finite planar point set with tolerance-based membership. Points closer than
// the tolerance to an existing point are dropped on insertion.
class CenterSet {
 public:
  explicit CenterSet(double tolerance = 0.005);

  bool insert(Complex z);
  bool includes(Complex z) const;
  const std::vector<Complex>& points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  double tolerance() const { return tol_; }

 private:
  std::int64_t cell_key(long long gx, long long gy) const;
  double tol_;
  std::vector<Complex> points_;
  std::unordered_map<std::int64_t, std::vector<std::uint32_t>> grid_;
};

bool include(Complex x, const CenterSet& s);

// e^{2 pi i dir / 3} (y - p) + p
Complex rotate3(Complex p, Complex y, int direction);

// Point of the half-open parallelogram {a m + b l : 0 <= a, b < 1} equivalent to z.
Complex reduce_to_parallelogram(Complex z, Complex m, Complex l);

// Centers of full-sized infinity-cusp horoballs reduced into P, sorted by (Re, Im).
std::vector<Complex> full_sized_centers(const CuspDiagram& diag, const Tolerances& tol = {});

// Every point of `base` translated by p m + q l, |p| <= kh(x), |q| <= k(x) + kl(x).
CenterSet translate(const std::vector<Complex>& base, const CuspDiagram& diag, double x,
                    const Tolerances& tol = {});

// C_P(x)
CenterSet translated_centers(const CuspDiagram& diag, double x, const Tolerances& tol = {});

// Centers of other-cusp horoballs with diameter >= hdiff_cutoff, translated like C_P(x).
CenterSet blocking_centers(const CuspDiagram& diag, double x, const Tolerances& tol = {});

// Candidate order-3 centers near c0 from equilateral triples (c0, x, y).
CenterSet centroid_strong(const CuspDiagram& diag, const Tolerances& tol = {},
                          std::optional<Complex> c0 = std::nullopt);
CenterSet centroid_weak(const CuspDiagram& diag, const Tolerances& tol = {},
                        std::optional<Complex> c0 = std::nullopt);

struct RotationSearch {
  bool result = false;
  Complex c0;
  std::vector<Complex> candidates;
  std::vector<Complex> passing;  // candidates whose rotations keep the translated centers
};

RotationSearch free_rot_strong_search(const CuspDiagram& diag, const Tolerances& tol = {},
                                      std::optional<Complex> c0 = std::nullopt);
bool free_rot_strong(const CuspDiagram& diag, const Tolerances& tol = {});

RotationSearch free_rot_weak_search(const CuspDiagram& diag, const Tolerances& tol = {},
                                    std::optional<Complex> c0 = std::nullopt);
bool free_rot_weak(const CuspDiagram& diag, const Tolerances& tol = {});

// How horoball labels must correspond under a full-packing rotation.
enum class LabelPolicy {
  kStrict,          // same cusp label
  kInfinityClass,   // infinity-cusp balls to infinity-cusp balls, others to others
  kInfinityOnly,    // only infinity-cusp balls are checked and matched
};

struct FullPackingCheck {
  bool holds = false;
  int checked = 0;
  int unmatched = 0;
  std::optional<Horoball> first_unmatched;
};

FullPackingCheck full_packing_check(const CuspDiagram& diag, Complex center, int order,
                                    const Tolerances& tol = {},
                                    LabelPolicy policy = LabelPolicy::kInfinityClass);
bool full_packing_rotation_test(const CuspDiagram& diag, Complex center, int order,
                                const Tolerances& tol = {},
                                LabelPolicy policy = LabelPolicy::kInfinityClass);

struct Axis {
  Complex center;
  int cusp;
};

std::vector<Axis> find_bad_order6_axes(const CuspDiagram& diag, const Tolerances& tol = {},
                                       LabelPolicy policy = LabelPolicy::kInfinityClass);

}  // namespace tetsym::cuspgeom
