#include "tetsym/homology.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "json_util.hpp"

namespace tetsym::homology {

IntMatrix::IntMatrix(int rows, int cols)
    : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols) {
  if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix dimension");
}

IntMatrix::IntMatrix(int rows, int cols, std::vector<Integer> entries)
    : rows_(rows), cols_(cols), a_(std::move(entries)) {
  if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix dimension");
  if (a_.size() != static_cast<std::size_t>(rows) * cols)
    throw std::invalid_argument("entry count does not match rows * cols");
}

IntMatrix IntMatrix::identity(int n) {
  IntMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix shapes do not agree");
  IntMatrix c(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (int j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

Integer determinant(const IntMatrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  const int n = a.rows();
  if (n == 0) return 1;
  // Bareiss elimination keeps every intermediate value integral.
  IntMatrix m = a;
  Integer prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (m(k, k) == 0) {
      int p = k + 1;
      while (p < n && m(p, k) == 0) ++p;
      if (p == n) return 0;
      for (int j = 0; j < n; ++j) std::swap(m(k, j), m(p, j));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

namespace {

void swap_rows(IntMatrix& m, int a, int b) {
  for (int j = 0; j < m.cols(); ++j) std::swap(m(a, j), m(b, j));
}

void swap_cols(IntMatrix& m, int a, int b) {
  for (int i = 0; i < m.rows(); ++i) std::swap(m(i, a), m(i, b));
}

// row[dst] -= q * row[src]
void sub_row(IntMatrix& m, int dst, int src, const Integer& q) {
  for (int j = 0; j < m.cols(); ++j)
    if (m(src, j) != 0) m(dst, j) -= q * m(src, j);
}

void sub_col(IntMatrix& m, int dst, int src, const Integer& q) {
  for (int i = 0; i < m.rows(); ++i)
    if (m(i, src) != 0) m(i, dst) -= q * m(i, src);
}

}  // namespace

SmithForm smith_normal_form(const IntMatrix& a) {
  const int rows = a.rows(), cols = a.cols();
  IntMatrix d = a;
  IntMatrix u = IntMatrix::identity(rows);
  IntMatrix v = IntMatrix::identity(cols);
  const int steps = std::min(rows, cols);
  bool exhausted = false;
  for (int t = 0; t < steps && !exhausted; ++t) {
    while (true) {
      // Pivot on the smallest nonzero magnitude left in the trailing block.
      int pr = -1, pc = -1;
      for (int i = t; i < rows; ++i)
        for (int j = t; j < cols; ++j)
          if (d(i, j) != 0 && (pr < 0 || abs(d(i, j)) < abs(d(pr, pc)))) {
            pr = i;
            pc = j;
          }
      if (pr < 0) {
        exhausted = true;
        break;
      }
      if (pr != t) {
        swap_rows(d, t, pr);
        swap_rows(u, t, pr);
      }
      if (pc != t) {
        swap_cols(d, t, pc);
        swap_cols(v, t, pc);
      }
      bool clean = true;
      for (int i = t + 1; i < rows; ++i) {
        if (d(i, t) == 0) continue;
        Integer q = d(i, t) / d(t, t);
        sub_row(d, i, t, q);
        sub_row(u, i, t, q);
        if (d(i, t) != 0) clean = false;
      }
      for (int j = t + 1; j < cols; ++j) {
        if (d(t, j) == 0) continue;
        Integer q = d(t, j) / d(t, t);
        sub_col(d, j, t, q);
        sub_col(v, j, t, q);
        if (d(t, j) != 0) clean = false;
      }
      if (!clean) continue;
      // The pivot must divide the rest of the block for the divisibility chain.
      int bad = -1;
      for (int i = t + 1; i < rows && bad < 0; ++i)
        for (int j = t + 1; j < cols; ++j)
          if (d(i, j) % d(t, t) != 0) {
            bad = i;
            break;
          }
      if (bad < 0) break;
      sub_row(d, t, bad, -1);
      sub_row(u, t, bad, -1);
    }
    if (!exhausted && d(t, t) < 0) {
      for (int j = 0; j < cols; ++j) d(t, j) = -d(t, j);
      for (int j = 0; j < rows; ++j) u(t, j) = -u(t, j);
    }
  }
  SmithForm out{{}, std::move(u), std::move(v)};
  for (int t = 0; t < steps; ++t) {
    out.summary.divisors.push_back(d(t, t));
    if (d(t, t) == 0) ++out.summary.rank;
  }
  return out;
}

HomologySummary presented_homology(const IntMatrix& relations) {
  HomologySummary h = smith_normal_form(relations).summary;
  while (static_cast<int>(h.divisors.size()) < relations.cols()) {
    h.divisors.push_back(0);
    ++h.rank;
  }
  return h;
}

bool is_homology_link(const HomologySummary& h, int num_cusps) {
  for (const auto& d : h.divisors)
    if (d != 0 && d != 1) return false;
  return h.rank == num_cusps;
}

IntMatrix parse_matrix(std::string_view text) {
  using detail::json;
  json doc = detail::parse_json(text);
  long long rows = detail::as_int(detail::field(doc, "rows", "$"), "$.rows");
  long long cols = detail::as_int(detail::field(doc, "cols", "$"), "$.cols");
  if (rows < 0 || cols < 0) throw SchemaError("$: negative matrix dimension");
  const json& e = detail::array_at(detail::field(doc, "entries", "$"), 0, "$.entries");
  if (e.size() != static_cast<std::size_t>(rows * cols))
    throw SchemaError("$.entries: expected rows * cols = " + std::to_string(rows * cols) +
                      " entries, got " + std::to_string(e.size()));
  std::vector<Integer> vals;
  vals.reserve(e.size());
  for (std::size_t k = 0; k < e.size(); ++k) {
    std::string path = "$.entries[" + std::to_string(k) + "]";
    if (e[k].is_number_integer()) {
      vals.emplace_back(e[k].get<long long>());
    } else if (e[k].is_number_unsigned()) {
      vals.emplace_back(e[k].get<unsigned long long>());
    } else if (e[k].is_string()) {
      const std::string s = e[k].get<std::string>();
      std::size_t start = (!s.empty() && s[0] == '-') ? 1 : 0;
      if (start == s.size() || s.find_first_not_of("0123456789", start) != std::string::npos)
        throw SchemaError(path + ": not a decimal integer");
      vals.emplace_back(s);
    } else {
      throw SchemaError(path + ": expected an integer or a decimal string");
    }
  }
  return IntMatrix(static_cast<int>(rows), static_cast<int>(cols), std::move(vals));
}

std::string to_json(const IntMatrix& m) {
  using detail::json;
  json entries = json::array();
  for (const auto& x : m.entries()) {
    if (x >= std::numeric_limits<long long>::min() && x <= std::numeric_limits<long long>::max())
      entries.push_back(x.convert_to<long long>());
    else
      entries.push_back(x.str());
  }
  return json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", entries}}.dump();
}

}  // namespace tetsym::homology
