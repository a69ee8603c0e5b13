#pragma once

#include <algorithm>
#include <numeric>
#include <vector>

namespace tetsym::detail {

class UnionFind {
 public:
  explicit UnionFind(int n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

  int find(int x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  // Keeps the smaller root so that roots are class minima.
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a > b) std::swap(a, b);
    parent_[b] = a;
  }

  // Classes sorted internally and ordered by their minimum element.
  std::vector<std::vector<int>> classes() {
    const int n = static_cast<int>(parent_.size());
    std::vector<int> slot(n, -1);
    std::vector<std::vector<int>> out;
    for (int i = 0; i < n; ++i) {
      int r = find(i);
      if (slot[r] < 0) {
        slot[r] = static_cast<int>(out.size());
        out.emplace_back();
      }
      out[slot[r]].push_back(i);
    }
    return out;
  }

 private:
  std::vector<int> parent_;
};

}  // namespace tetsym::detail
