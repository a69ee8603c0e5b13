#pragma once

// Brute-force references that share no code with the library.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "tetsym/cuspgeom.hpp"

namespace oracle {

using Grid = std::vector<std::vector<long long>>;

// Cofactor expansion on machine integers; entries up to 20 in a 6x6 stay exact.
inline long long minor_det(const Grid& a, const std::vector<int>& rows, const std::vector<int>& cols) {
  if (rows.size() == 1) return a[rows[0]][cols[0]];
  const std::vector<int> sub_rows(rows.begin() + 1, rows.end());
  long long sum = 0;
  for (std::size_t k = 0; k < cols.size(); ++k) {
    std::vector<int> sub_cols = cols;
    sub_cols.erase(sub_cols.begin() + k);
    long long term = a[rows[0]][cols[k]] * minor_det(a, sub_rows, sub_cols);
    sum += k % 2 ? -term : term;
  }
  return sum;
}

inline void subsets(int n, int k, int start, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == k) {
    out.push_back(cur);
    return;
  }
  for (int i = start; i < n; ++i) {
    cur.push_back(i);
    subsets(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

// Elementary divisors d_k = g_k / g_(k-1), g_k the gcd of all k x k minors.
inline std::vector<long long> smith_divisors(const Grid& a, int r, int c) {
  std::vector<long long> out;
  long long prev = 1;
  const int n = std::min(r, c);
  for (int k = 1; k <= n; ++k) {
    std::vector<std::vector<int>> rs, cs;
    std::vector<int> cur;
    subsets(r, k, 0, cur, rs);
    subsets(c, k, 0, cur, cs);
    long long g = 0;
    for (const auto& rr : rs)
      for (const auto& cc : cs) g = std::gcd(g, minor_det(a, rr, cc));
    if (g == 0) {
      out.resize(n, 0);
      return out;
    }
    out.push_back(g / prev);
    prev = g;
  }
  return out;
}

// Translates of full-sized centers within x*d of c0 that are missing from C_P(x).
// The enumeration range comes from lattice coordinates, not from the coverage counts.
inline int coverage_violations(const tetsym::cuspgeom::CuspDiagram& d, double x) {
  using tetsym::cuspgeom::Complex;
  const Complex m = d.meridian, l = d.longitude;
  const double area = std::abs((std::conj(m) * l).imag());
  const double dd = std::max({std::abs(m), std::abs(l), std::abs(m + l), std::abs(m - l)});
  auto base = tetsym::cuspgeom::full_sized_centers(d);
  const Complex c0 = base.front();
  auto set = tetsym::cuspgeom::translated_centers(d, x);
  const double reach = x * dd + dd;
  const int np = static_cast<int>(std::ceil(reach * std::abs(l) / area)) + 1;
  const int nq = static_cast<int>(std::ceil(reach * std::abs(m) / area)) + 1;
  int bad = 0;
  for (Complex c : base)
    for (int p = -np; p <= np; ++p)
      for (int q = -nq; q <= nq; ++q) {
        Complex t = c + double(p) * m + double(q) * l;
        if (std::abs(t - c0) <= x * dd && !set.includes(t)) ++bad;
      }
  return bad;
}

}  // namespace oracle
