#include "tetsym/cuspgeom.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "json_util.hpp"

namespace tetsym::cuspgeom {

namespace {

double cross(Complex a, Complex b) { return (std::conj(a) * b).imag(); }

// Sort key that ignores floating noise below 1e-7.
std::pair<long long, long long> lex_key(Complex z) {
  return {std::llround(z.real() * 1e7), std::llround(z.imag() * 1e7)};
}

void sort_lex(std::vector<Complex>& pts) {
  std::stable_sort(pts.begin(), pts.end(),
                   [](Complex a, Complex b) { return lex_key(a) < lex_key(b); });
}

}  // namespace

std::vector<std::string> diagram_problems(const CuspDiagram& diag) {
  std::vector<std::string> out;
  const Complex m = diag.meridian, l = diag.longitude;
  const double area = std::abs(cross(m, l));
  if (!(area > 1e-12)) out.push_back("meridian and longitude are linearly dependent");
  if (!(l.real() > 0) || std::abs(l.imag()) > 1e-9 * std::max(1.0, std::abs(l)))
    out.push_back("longitude must be real and positive");
  if (!(diag.cusp_volume > 0)) out.push_back("cusp volume must be positive");
  if (area > 0 && diag.cusp_volume > 0 &&
      std::abs(area - 2 * diag.cusp_volume) > 1e-4 * 2 * diag.cusp_volume)
    out.push_back("parallelogram area " + std::to_string(area) + " is not twice the cusp volume " +
                  std::to_string(diag.cusp_volume));
  if (diag.num_cusps <= 0) out.push_back("cusp count must be positive");
  if (diag.cusp_at_infinity < 0 || diag.cusp_at_infinity >= diag.num_cusps)
    out.push_back("cusp at infinity is not a valid label");
  if (!(diag.export_cutoff > 0)) out.push_back("export cutoff must be positive");
  bool full = false;
  for (std::size_t k = 0; k < diag.horoballs.size(); ++k) {
    const auto& h = diag.horoballs[k];
    if (!(h.diameter > 0 && h.diameter <= 1 + 1e-6))
      out.push_back("horoball " + std::to_string(k) + " has diameter outside (0, 1]");
    if (h.cusp < 0 || h.cusp >= diag.num_cusps)
      out.push_back("horoball " + std::to_string(k) + " has an invalid cusp label");
    if (h.cusp == diag.cusp_at_infinity && std::abs(h.diameter - 1) < 0.01) full = true;
  }
  if (!full) out.push_back("no full-sized horoball of the cusp at infinity");
  return out;
}

void require_valid(const CuspDiagram& diag) {
  auto problems = diagram_problems(diag);
  if (problems.empty()) return;
  std::string msg = "invalid cusp diagram '" + diag.manifold + "' (cusp " +
                    std::to_string(diag.cusp_at_infinity) + "):";
  for (const auto& p : problems) msg += " " + p + ";";
  throw InvalidDiagram(msg);
}

CuspDiagram parse_diagram(std::string_view text) {
  using detail::as_int;
  using detail::as_real;
  using detail::field;
  using detail::json;
  json doc = detail::parse_json(text);
  auto complex_at = [](const json& v, const std::string& path) {
    const json& a = detail::array_at(v, 2, path);
    return Complex(as_real(a[0], path + "[0]"), as_real(a[1], path + "[1]"));
  };
  CuspDiagram d;
  d.manifold = detail::as_string(field(doc, "manifold", "$"), "$.manifold");
  d.cusp_at_infinity =
      static_cast<int>(as_int(field(doc, "cusp_at_infinity", "$"), "$.cusp_at_infinity"));
  d.num_cusps = static_cast<int>(as_int(field(doc, "num_cusps", "$"), "$.num_cusps"));
  d.meridian = complex_at(field(doc, "meridian", "$"), "$.meridian");
  d.longitude = complex_at(field(doc, "longitude", "$"), "$.longitude");
  d.cusp_volume = as_real(field(doc, "cusp_volume", "$"), "$.cusp_volume");
  d.export_cutoff = as_real(field(doc, "export_cutoff", "$"), "$.export_cutoff");
  const json& hs = detail::array_at(field(doc, "horoballs", "$"), 0, "$.horoballs");
  d.horoballs.reserve(hs.size());
  for (std::size_t k = 0; k < hs.size(); ++k) {
    std::string path = "$.horoballs[" + std::to_string(k) + "]";
    d.horoballs.push_back({complex_at(field(hs[k], "center", path), path + ".center"),
                           as_real(field(hs[k], "diameter", path), path + ".diameter"),
                           static_cast<int>(as_int(field(hs[k], "cusp", path), path + ".cusp"))});
  }
  return d;
}

std::string to_json(const CuspDiagram& diag) {
  using detail::json;
  json hs = json::array();
  for (const auto& h : diag.horoballs)
    hs.push_back({{"center", {h.center.real(), h.center.imag()}},
                  {"diameter", h.diameter},
                  {"cusp", h.cusp}});
  json doc = {{"manifold", diag.manifold},
              {"cusp_at_infinity", diag.cusp_at_infinity},
              {"num_cusps", diag.num_cusps},
              {"meridian", {diag.meridian.real(), diag.meridian.imag()}},
              {"longitude", {diag.longitude.real(), diag.longitude.imag()}},
              {"cusp_volume", diag.cusp_volume},
              {"export_cutoff", diag.export_cutoff},
              {"horoballs", hs}};
  return doc.dump();
}

LatticeConstants lattice_constants(const CuspDiagram& diag) {
  const Complex m = diag.meridian, l = diag.longitude;
  const double area = std::abs(cross(m, l));
  if (!(area > 1e-12) || std::abs(m) == 0 || std::abs(l) == 0)
    throw InvalidDiagram("degenerate cusp parallelogram (sin theta = 0)");
  double c = (std::conj(m) * l).real() / (std::abs(m) * std::abs(l));
  double theta = std::acos(std::clamp(c, -1.0, 1.0));
  double d = std::max({std::abs(m), std::abs(l), std::abs(m + l), std::abs(m - l)});
  return {theta, d, area};
}

CoverageCounts coverage_counts(double x, const CuspDiagram& diag) {
  if (!(x > 0)) throw std::invalid_argument("coverage radius factor must be positive");
  const auto lc = lattice_constants(diag);
  const double mm = std::abs(diag.meridian), ll = std::abs(diag.longitude);
  const double reach = (x + 1) * lc.d + 1;
  // sin and cos straight from the products, so a right angle gives cos = 0 exactly
  const double sin_t = lc.area / (mm * ll);
  const double cos_t = std::abs((std::conj(diag.meridian) * diag.longitude).real()) / (mm * ll);
  // A ratio that is an integer up to rounding must not round up to the next one.
  auto up = [](double v) { return static_cast<int>(std::ceil(v - 1e-9)); };
  int kh = up(reach / (mm * sin_t));
  int k = up(kh * mm * cos_t / ll);
  int kl = up(reach / ll);
  return {kh, k, kl};
}

CenterSet::CenterSet(double tolerance) : tol_(tolerance) {
  if (!(tolerance > 0)) throw std::invalid_argument("center set tolerance must be positive");
}

std::int64_t CenterSet::cell_key(long long gx, long long gy) const {
  return (static_cast<std::int64_t>(gx) << 32) ^ static_cast<std::int64_t>(gy & 0xffffffffLL);
}

bool CenterSet::includes(Complex z) const {
  const long long gx = static_cast<long long>(std::floor(z.real() / tol_));
  const long long gy = static_cast<long long>(std::floor(z.imag() / tol_));
  for (long long dx = -1; dx <= 1; ++dx)
    for (long long dy = -1; dy <= 1; ++dy) {
      auto it = grid_.find(cell_key(gx + dx, gy + dy));
      if (it == grid_.end()) continue;
      for (auto idx : it->second)
        if (std::abs(points_[idx] - z) < tol_) return true;
    }
  return false;
}

bool CenterSet::insert(Complex z) {
  if (includes(z)) return false;
  const long long gx = static_cast<long long>(std::floor(z.real() / tol_));
  const long long gy = static_cast<long long>(std::floor(z.imag() / tol_));
  grid_[cell_key(gx, gy)].push_back(static_cast<std::uint32_t>(points_.size()));
  points_.push_back(z);
  return true;
}

bool include(Complex x, const CenterSet& s) { return s.includes(x); }

Complex rotate3(Complex p, Complex y, int direction) {
  static const Complex w(-0.5, std::numbers::sqrt3 / 2);
  return (direction >= 0 ? w : std::conj(w)) * (y - p) + p;
}

Complex reduce_to_parallelogram(Complex z, Complex m, Complex l) {
  double a = cross(l, z) / cross(l, m);
  double b = cross(m, z) / cross(m, l);
  a -= std::floor(a);
  b -= std::floor(b);
  if (a > 1 - 1e-9) a = 0;
  if (b > 1 - 1e-9) b = 0;
  return a * m + b * l;
}

std::vector<Complex> full_sized_centers(const CuspDiagram& diag, const Tolerances& tol) {
  CenterSet s(tol.match);
  for (const auto& h : diag.horoballs)
    if (h.cusp == diag.cusp_at_infinity && h.diameter >= tol.fullsize_cutoff)
      s.insert(reduce_to_parallelogram(h.center, diag.meridian, diag.longitude));
  std::vector<Complex> pts = s.points();
  sort_lex(pts);
  return pts;
}

CenterSet translate(const std::vector<Complex>& base, const CuspDiagram& diag, double x,
                    const Tolerances& tol) {
  const auto c = coverage_counts(x, diag);
  const int qr = c.k + c.kl;
  CenterSet out(tol.match);
  for (Complex z : base)
    for (int p = -c.kh; p <= c.kh; ++p)
      for (int q = -qr; q <= qr; ++q)
        out.insert(z + static_cast<double>(p) * diag.meridian +
                   static_cast<double>(q) * diag.longitude);
  return out;
}

CenterSet translated_centers(const CuspDiagram& diag, double x, const Tolerances& tol) {
  auto base = full_sized_centers(diag, tol);
  if (base.empty()) throw InvalidDiagram("no full-sized horoball of the cusp at infinity");
  return translate(base, diag, x, tol);
}

CenterSet blocking_centers(const CuspDiagram& diag, double x, const Tolerances& tol) {
  CenterSet s(tol.match);
  for (const auto& h : diag.horoballs)
    if (h.cusp != diag.cusp_at_infinity && h.diameter >= tol.hdiff_cutoff)
      s.insert(reduce_to_parallelogram(h.center, diag.meridian, diag.longitude));
  std::vector<Complex> base = s.points();
  sort_lex(base);
  return translate(base, diag, x, tol);
}

namespace {

Complex pick_c0(const CuspDiagram& diag, const Tolerances& tol, std::optional<Complex> c0) {
  if (c0) return *c0;
  auto base = full_sized_centers(diag, tol);
  if (base.empty()) throw InvalidDiagram("no full-sized horoball of the cusp at infinity");
  return base.front();
}

// Centroids (x + y + h) / 3 of near-equilateral triples with side below `side`
// and centroid closer than `reach` to h, skipping blocked centroids.
CenterSet centroids(const CenterSet& pts, Complex h, double side, double reach,
                    const CenterSet& blocked, const Tolerances& tol) {
  const double t = tol.match;
  struct Near {
    Complex z;
    double r;
  };
  // Partners must match the radius of x within t, so a slightly larger disc suffices.
  std::vector<Near> near;
  for (Complex z : pts.points()) {
    double r = std::abs(z - h);
    if (r < side + 2 * t) near.push_back({z, r});
  }
  CenterSet out(t);
  for (std::size_t a = 0; a < near.size(); ++a) {
    const auto& x = near[a];
    if (!(t < x.r && x.r < side + t)) continue;
    for (std::size_t b = a + 1; b < near.size(); ++b) {
      const auto& y = near[b];
      if (!(std::abs(x.r - y.r) < t)) continue;
      Complex u = x.z - h, w = y.z - h;
      double cosine = std::abs(u.real() * w.real() + u.imag() * w.imag()) / (x.r * y.r);
      if (!(std::abs(cosine - 0.5) < t)) continue;
      Complex c = (x.z + y.z + h) / 3.0;
      if (std::abs(h - c) < reach + t && !blocked.includes(c)) out.insert(c);
    }
  }
  return out;
}

bool rotations_stay_inside(Complex e, const CenterSet& from, const CenterSet& into) {
  for (Complex y : from.points())
    if (!into.includes(rotate3(e, y, +1)) || !into.includes(rotate3(e, y, -1))) return false;
  return true;
}

}  // namespace

CenterSet centroid_strong(const CuspDiagram& diag, const Tolerances& tol,
                          std::optional<Complex> c0) {
  const Complex h = pick_c0(diag, tol, c0);
  const auto lc = lattice_constants(diag);
  // sqrt(area) / (sqrt(2) 3^(1/4)) written through the cusp volume (area = 2 volume).
  const double side = std::sqrt(diag.cusp_volume) / std::pow(3.0, 0.25);
  return centroids(translated_centers(diag, 4.0 / 7, tol), h, side, lc.d / 3,
                   blocking_centers(diag, 4.0 / 7, tol), tol);
}

CenterSet centroid_weak(const CuspDiagram& diag, const Tolerances& tol,
                        std::optional<Complex> c0) {
  const Complex h = pick_c0(diag, tol, c0);
  const auto lc = lattice_constants(diag);
  const double side = std::sqrt(lc.area) / (std::sqrt(2.0) * std::pow(3.0, 0.75));
  return centroids(translated_centers(diag, 1.0 / 3, tol), h, side, lc.d / 5,
                   blocking_centers(diag, 1.0 / 3, tol), tol);
}

RotationSearch free_rot_strong_search(const CuspDiagram& diag, const Tolerances& tol,
                                      std::optional<Complex> c0) {
  RotationSearch out;
  out.c0 = pick_c0(diag, tol, c0);
  const auto c = coverage_counts(4.0 / 7, diag);
  const CenterSet inner = translated_centers(diag, 4.0 / 7, tol);
  const CenterSet outer = translated_centers(diag, 5.0 / 3 + c.kh + c.k + c.kl, tol);
  const CenterSet cand = centroid_strong(diag, tol, out.c0);
  out.candidates = cand.points();
  CenterSet found(tol.match);
  for (Complex e : out.candidates) {
    if (!rotations_stay_inside(e, inner, outer)) continue;
    if (found.insert(e)) out.passing.push_back(e);
    if (found.size() > 1) {
      out.result = true;
      break;
    }
  }
  return out;
}

bool free_rot_strong(const CuspDiagram& diag, const Tolerances& tol) {
  return free_rot_strong_search(diag, tol).result;
}

RotationSearch free_rot_weak_search(const CuspDiagram& diag, const Tolerances& tol,
                                    std::optional<Complex> c0) {
  RotationSearch out;
  out.c0 = pick_c0(diag, tol, c0);
  const auto lc = lattice_constants(diag);
  const auto c = coverage_counts(1.0 / 3, diag);
  const CenterSet inner = translated_centers(diag, 1.0 / 3, tol);
  const CenterSet outer = translated_centers(diag, 7.0 / 5 + c.kh + c.k + c.kl, tol);
  const CenterSet blocked = blocking_centers(diag, 1.0 / 3, tol);
  CenterSet cand(tol.match);
  cand.insert(out.c0);
  for (Complex e : centroid_weak(diag, tol, out.c0).points()) cand.insert(e);
  out.candidates = cand.points();
  for (Complex e : out.candidates) {
    if (!(std::abs(e - out.c0) < lc.d / 5 + tol.match) || blocked.includes(e)) continue;
    if (!rotations_stay_inside(e, inner, outer)) continue;
    out.passing.push_back(e);
    out.result = true;
    break;
  }
  return out;
}

bool free_rot_weak(const CuspDiagram& diag, const Tolerances& tol) {
  return free_rot_weak_search(diag, tol).result;
}

namespace {

// Horoballs reduced into P together with their copies across the edges of P,
// bucketed on a grid for radius queries.
class PackingIndex {
 public:
  PackingIndex(const CuspDiagram& diag, double cell) : cell_(cell) {
    const Complex m = diag.meridian, l = diag.longitude;
    for (std::size_t k = 0; k < diag.horoballs.size(); ++k) {
      Complex z = reduce_to_parallelogram(diag.horoballs[k].center, m, l);
      for (int p = -1; p <= 1; ++p)
        for (int q = -1; q <= 1; ++q) {
          Complex w = z + static_cast<double>(p) * m + static_cast<double>(q) * l;
          grid_[key(w)].push_back({w, static_cast<int>(k)});
        }
    }
  }

  template <class F>
  bool any_within(Complex z, double r, F&& accept) const {
    auto [gx, gy] = coords(z);
    const long long span = static_cast<long long>(std::ceil(r / cell_));
    for (long long dx = -span; dx <= span; ++dx)
      for (long long dy = -span; dy <= span; ++dy) {
        auto it = grid_.find(pack(gx + dx, gy + dy));
        if (it == grid_.end()) continue;
        for (const auto& e : it->second)
          if (std::abs(e.pos - z) < r && accept(e.index)) return true;
      }
    return false;
  }

 private:
  struct Entry {
    Complex pos;
    int index;
  };
  std::pair<long long, long long> coords(Complex z) const {
    return {static_cast<long long>(std::floor(z.real() / cell_)),
            static_cast<long long>(std::floor(z.imag() / cell_))};
  }
  static std::int64_t pack(long long gx, long long gy) {
    return (static_cast<std::int64_t>(gx) << 32) ^ static_cast<std::int64_t>(gy & 0xffffffffLL);
  }
  std::int64_t key(Complex z) const {
    auto [gx, gy] = coords(z);
    return pack(gx, gy);
  }

  double cell_;
  std::unordered_map<std::int64_t, std::vector<Entry>> grid_;
};

bool labels_agree(const CuspDiagram& diag, int from, int to, LabelPolicy policy) {
  const int inf = diag.cusp_at_infinity;
  switch (policy) {
    case LabelPolicy::kStrict:
      return from == to;
    case LabelPolicy::kInfinityClass:
      return (from == inf) == (to == inf);
    case LabelPolicy::kInfinityOnly:
      return to == inf;
  }
  return false;
}

}  // namespace

FullPackingCheck full_packing_check(const CuspDiagram& diag, Complex center, int order,
                                    const Tolerances& tol, LabelPolicy policy) {
  if (order <= 0) throw std::invalid_argument("rotation order must be positive");
  const PackingIndex index(diag, std::max(tol.match, 0.01));
  const Complex rot = std::polar(1.0, 2 * std::numbers::pi / order);
  const Complex m = diag.meridian, l = diag.longitude;
  // Balls near the export cutoff may have partners that were not exported.
  const double floor = diag.export_cutoff + tol.diameter;
  FullPackingCheck out;
  for (const auto& h : diag.horoballs) {
    if (h.diameter < floor) continue;
    if (policy == LabelPolicy::kInfinityOnly && h.cusp != diag.cusp_at_infinity) continue;
    ++out.checked;
    Complex w = reduce_to_parallelogram(center + rot * (h.center - center), m, l);
    bool ok = index.any_within(w, tol.match, [&](int k) {
      const auto& g = diag.horoballs[k];
      return std::abs(g.diameter - h.diameter) < tol.diameter &&
             labels_agree(diag, h.cusp, g.cusp, policy);
    });
    if (!ok) {
      if (!out.first_unmatched) out.first_unmatched = h;
      ++out.unmatched;
    }
  }
  out.holds = out.unmatched == 0;
  return out;
}

bool full_packing_rotation_test(const CuspDiagram& diag, Complex center, int order,
                                const Tolerances& tol, LabelPolicy policy) {
  return full_packing_check(diag, center, order, tol, policy).holds;
}

std::vector<Axis> find_bad_order6_axes(const CuspDiagram& diag, const Tolerances& tol,
                                       LabelPolicy policy) {
  CenterSet seen(tol.match);
  std::vector<Axis> centers;
  for (const auto& h : diag.horoballs) {
    if (h.cusp == diag.cusp_at_infinity || h.diameter < tol.hdiff_cutoff) continue;
    Complex z = reduce_to_parallelogram(h.center, diag.meridian, diag.longitude);
    if (seen.insert(z)) centers.push_back({z, h.cusp});
  }
  std::stable_sort(centers.begin(), centers.end(),
                   [](const Axis& a, const Axis& b) { return lex_key(a.center) < lex_key(b.center); });
  std::vector<Axis> out;
  for (const auto& a : centers)
    if (full_packing_rotation_test(diag, a.center, 6, tol, policy)) out.push_back(a);
  return out;
}

}  // namespace tetsym::cuspgeom
