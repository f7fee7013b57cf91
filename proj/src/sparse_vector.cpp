#include "expgraph/sparse_vector.hpp"

#include <algorithm>
#include <cmath>

namespace expgraph {

SparseVector SparseVector::from_dense(std::span<const double> dense) {
  SparseVector out;
  for (std::size_t i = 0; i < dense.size(); ++i) {
    if (dense[i] != 0.0) out.set(static_cast<node_t>(i), dense[i]);
  }
  return out;
}

SparseVector SparseVector::from_entries(std::span<const Entry> entries) {
  SparseVector out;
  out.reserve(entries.size());
  for (const auto& e : entries) out.add(e.node, e.value);
  return out;
}

double SparseVector::get(node_t i) const {
  auto it = values_.find(i);
  return it == values_.end() ? 0.0 : it->second;
}

double SparseVector::one_norm() const {
  // Summed in node order so the result does not depend on hash layout.
  double sum = 0.0;
  for (const auto& e : sorted_by_node()) sum += std::abs(e.value);
  return sum;
}

void SparseVector::compact() {
  std::erase_if(values_, [](const auto& kv) { return kv.second == 0.0; });
}

std::vector<Entry> SparseVector::sorted_by_node() const {
  std::vector<Entry> out;
  out.reserve(values_.size());
  for (const auto& [i, v] : values_) out.push_back({i, v});
  std::sort(out.begin(), out.end(), [](const Entry& a, const Entry& b) { return a.node < b.node; });
  return out;
}

std::vector<Entry> SparseVector::sorted_by_value() const {
  std::vector<Entry> out;
  out.reserve(values_.size());
  for (const auto& [i, v] : values_) out.push_back({i, v});
  std::sort(out.begin(), out.end(), [](const Entry& a, const Entry& b) {
    return a.value != b.value ? a.value > b.value : a.node < b.node;
  });
  return out;
}

std::vector<double> SparseVector::to_dense(std::size_t n) const {
  std::vector<double> out(n, 0.0);
  for (const auto& [i, v] : values_) {
    if (i < n) out[i] = v;
  }
  return out;
}

}  // namespace expgraph
