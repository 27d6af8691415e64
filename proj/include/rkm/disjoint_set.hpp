#ifndef RKM_DISJOINT_SET_HPP
#define RKM_DISJOINT_SET_HPP

#include <numeric>
#include <utility>
#include <vector>

namespace rkm {

class DisjointSet {
 public:
  explicit DisjointSet(int size) : parent_(static_cast<std::size_t>(size)), rank_(parent_.size(), 0) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }

  int find(int x) {
    int root = x;
    while (parent_[static_cast<std::size_t>(root)] != root) root = parent_[static_cast<std::size_t>(root)];
    while (parent_[static_cast<std::size_t>(x)] != root) {
      x = std::exchange(parent_[static_cast<std::size_t>(x)], root);
    }
    return root;
  }

  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (rank_[static_cast<std::size_t>(a)] < rank_[static_cast<std::size_t>(b)]) std::swap(a, b);
    parent_[static_cast<std::size_t>(b)] = a;
    if (rank_[static_cast<std::size_t>(a)] == rank_[static_cast<std::size_t>(b)]) ++rank_[static_cast<std::size_t>(a)];
  }

  int size() const { return static_cast<int>(parent_.size()); }

  /// Dense ids, numbered in order of each set's smallest element.
  std::vector<int> dense_labels(int* count = nullptr) {
    std::vector<int> id_of_root(parent_.size(), -1);
    std::vector<int> labels(parent_.size());
    int next = 0;
    for (int i = 0; i < size(); ++i) {
      int& id = id_of_root[static_cast<std::size_t>(find(i))];
      if (id < 0) id = next++;
      labels[static_cast<std::size_t>(i)] = id;
    }
    if (count != nullptr) *count = next;
    return labels;
  }

 private:
  std::vector<int> parent_;
  std::vector<int> rank_;
};

}  // namespace rkm

#endif  // RKM_DISJOINT_SET_HPP
