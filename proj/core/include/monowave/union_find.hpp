#pragma once

#include <cstddef>
#include <numeric>
#include <vector>

namespace monowave {

/// Disjoint sets with path halving and union by size.
class UnionFind {
 public:
  explicit UnionFind(std::size_t count = 0) { resize(count); }

  void resize(std::size_t count) {
    const std::size_t old = parent_.size();
    parent_.resize(count);
    size_.resize(count, 1);
    std::iota(parent_.begin() + static_cast<std::ptrdiff_t>(old), parent_.end(), old);
  }
  std::size_t add() {
    resize(parent_.size() + 1);
    return parent_.size() - 1;
  }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
  }
  std::size_t size() const { return parent_.size(); }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> size_;
};

}  // namespace monowave
