#pragma once

#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "expgraph/types.hpp"

namespace expgraph {

// Residual coordinate of the block system: Taylor block j and node i.
inline std::uint64_t residual_key(int block, node_t node) {
  return (static_cast<std::uint64_t>(block) << 32) | node;
}
inline int key_block(std::uint64_t key) { return static_cast<int>(key >> 32); }
inline node_t key_node(std::uint64_t key) { return static_cast<node_t>(key & 0xffffffffu); }

struct HeapItem {
  std::uint64_t key;
  double value;
};

// Binary max-heap on |value| with a locator map for in-place updates.
// Equal magnitudes order by ascending (block, node).
class ResidualHeap {
 public:
  // Adds delta to the entry at (block, node), inserting it when absent, and
  // restores heap order. Returns the previous value (0 when inserted).
  double add(int block, node_t node, double delta);

  HeapItem pop_top();
  const HeapItem& top() const { return heap_.front(); }

  bool empty() const { return heap_.empty(); }
  std::size_t size() const { return heap_.size(); }
  double value(int block, node_t node) const;

  std::span<const HeapItem> items() const { return heap_; }

  // Heap order plus locator/heap agreement. O(size).
  bool check_invariants() const;

 private:
  static bool before(const HeapItem& a, const HeapItem& b);
  void place(std::size_t slot, const HeapItem& item);
  void sift_up(std::size_t slot);
  void sift_down(std::size_t slot);

  std::vector<HeapItem> heap_;
  std::unordered_map<std::uint64_t, std::size_t> locator_;
};

}  // namespace expgraph
