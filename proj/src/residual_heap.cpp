#include "expgraph/residual_heap.hpp"

#include <cmath>
#include <stdexcept>

namespace expgraph {

bool ResidualHeap::before(const HeapItem& a, const HeapItem& b) {
  const double ma = std::abs(a.value);
  const double mb = std::abs(b.value);
  if (ma != mb) return ma > mb;
  return a.key < b.key;
}

void ResidualHeap::place(std::size_t slot, const HeapItem& item) {
  heap_[slot] = item;
  locator_[item.key] = slot;
}

void ResidualHeap::sift_up(std::size_t slot) {
  const HeapItem item = heap_[slot];
  while (slot > 0) {
    const std::size_t parent = (slot - 1) / 2;
    if (!before(item, heap_[parent])) break;
    place(slot, heap_[parent]);
    slot = parent;
  }
  place(slot, item);
}

void ResidualHeap::sift_down(std::size_t slot) {
  const HeapItem item = heap_[slot];
  const std::size_t n = heap_.size();
  for (;;) {
    std::size_t child = 2 * slot + 1;
    if (child >= n) break;
    if (child + 1 < n && before(heap_[child + 1], heap_[child])) ++child;
    if (!before(heap_[child], item)) break;
    place(slot, heap_[child]);
    slot = child;
  }
  place(slot, item);
}

double ResidualHeap::add(int block, node_t node, double delta) {
  const std::uint64_t key = residual_key(block, node);
  auto it = locator_.find(key);
  if (it == locator_.end()) {
    heap_.push_back({key, delta});
    locator_.emplace(key, heap_.size() - 1);
    sift_up(heap_.size() - 1);
    return 0.0;
  }
  const std::size_t slot = it->second;
  const double old = heap_[slot].value;
  heap_[slot].value = old + delta;
  // Magnitude may move either way for signed data.
  if (std::abs(old + delta) >= std::abs(old)) {
    sift_up(slot);
  } else {
    sift_down(slot);
  }
  return old;
}

HeapItem ResidualHeap::pop_top() {
  if (heap_.empty()) throw std::logic_error("pop from empty residual heap");
  const HeapItem out = heap_.front();
  locator_.erase(out.key);
  const HeapItem last = heap_.back();
  heap_.pop_back();
  if (!heap_.empty()) {
    heap_.front() = last;
    sift_down(0);
  }
  return out;
}

double ResidualHeap::value(int block, node_t node) const {
  auto it = locator_.find(residual_key(block, node));
  return it == locator_.end() ? 0.0 : heap_[it->second].value;
}

bool ResidualHeap::check_invariants() const {
  if (locator_.size() != heap_.size()) return false;
  for (std::size_t s = 0; s < heap_.size(); ++s) {
    auto it = locator_.find(heap_[s].key);
    if (it == locator_.end() || it->second != s) return false;
    if (s > 0 && before(heap_[s], heap_[(s - 1) / 2])) return false;
  }
  return true;
}

}  // namespace expgraph
