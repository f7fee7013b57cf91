#pragma once

#include <span>
#include <unordered_map>
#include <vector>

#include "expgraph/types.hpp"

namespace expgraph {

// Hash-backed sparse vector. Explicit zeros may be stored until compact().
class SparseVector {
 public:
  SparseVector() = default;

  static SparseVector from_dense(std::span<const double> dense);
  static SparseVector from_entries(std::span<const Entry> entries);

  double get(node_t i) const;
  void set(node_t i, double v) { values_[i] = v; }
  void add(node_t i, double v) { values_[i] += v; }
  void erase(node_t i) { values_.erase(i); }
  bool contains(node_t i) const { return values_.count(i) != 0; }

  std::size_t nnz() const { return values_.size(); }
  bool empty() const { return values_.empty(); }
  void clear() { values_.clear(); }
  void reserve(std::size_t n) { values_.reserve(n); }

  double one_norm() const;
  void compact();

  // Entries in ascending node order.
  std::vector<Entry> sorted_by_node() const;
  // Entries by descending value, ties by ascending node.
  std::vector<Entry> sorted_by_value() const;
  std::vector<double> to_dense(std::size_t n) const;

  auto begin() const { return values_.begin(); }
  auto end() const { return values_.end(); }

 private:
  std::unordered_map<node_t, double> values_;
};

}  // namespace expgraph
