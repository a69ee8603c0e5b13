#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <string_view>
#include <vector>

namespace tetsym::homology {

using Integer = boost::multiprecision::cpp_int;

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(int rows, int cols);
  IntMatrix(int rows, int cols, std::vector<Integer> entries);
  static IntMatrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Integer& operator()(int r, int c) { return a_[static_cast<std::size_t>(r) * cols_ + c]; }
  const Integer& operator()(int r, int c) const {
    return a_[static_cast<std::size_t>(r) * cols_ + c];
  }
  const std::vector<Integer>& entries() const { return a_; }

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  bool operator==(const IntMatrix&) const = default;

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<Integer> a_;
};

// Exact determinant by fraction-free elimination (square matrices only).
Integer determinant(const IntMatrix& a);

struct HomologySummary {
  std::vector<Integer> divisors;  // nonzero divisors in divisibility order, then zeros
  int rank = 0;                   // number of zero divisors
};

struct SmithForm {
  HomologySummary summary;  // one divisor per diagonal position, min(rows, cols) of them
  IntMatrix u, v;           // unimodular, u * a * v is diagonal
};

SmithForm smith_normal_form(const IntMatrix& a);

// H1 of the group presented by the relation matrix (rows are relators, columns
// are generators): divisors are padded with zeros to one per generator.
HomologySummary presented_homology(const IntMatrix& relations);

bool is_homology_link(const HomologySummary& h, int num_cusps);

// {"rows", "cols", "entries"}; entries may be strings for values beyond 64 bits.
IntMatrix parse_matrix(std::string_view text);
std::string to_json(const IntMatrix& m);

}  // namespace tetsym::homology
