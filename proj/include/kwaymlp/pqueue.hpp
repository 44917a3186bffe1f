#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "kwaymlp/types.hpp"

namespace kwaymlp {

/// Addressable binary max-heap keyed by (gain, random tiebreak). Equal-gain
/// elements pop in seeded random order, which keeps refinement deterministic
/// per seed without biasing toward low node ids.
class GainQueue {
public:
  GainQueue(std::size_t universe, Rng &rng) : _pos(universe, kNone), _rng(&rng) {}

  [[nodiscard]] bool empty() const { return _heap.empty(); }
  [[nodiscard]] std::size_t size() const { return _heap.size(); }
  [[nodiscard]] bool contains(NodeID id) const { return _pos[id] != kNone; }
  [[nodiscard]] Gain gain_of(NodeID id) const { return _heap[_pos[id]].gain; }

  [[nodiscard]] NodeID top() const { return _heap.front().id; }
  [[nodiscard]] Gain top_gain() const { return _heap.front().gain; }

  void insert(NodeID id, Gain gain) {
    if (contains(id)) {
      throw InvalidArgumentError("element already queued");
    }
    _heap.push_back({id, gain, _rng->next_u64()});
    _pos[id] = _heap.size() - 1;
    sift_up(_heap.size() - 1);
  }

  void update(NodeID id, Gain gain) {
    const std::size_t i = _pos[id];
    if (gain == _heap[i].gain) {
      return;
    }
    const bool increased = gain > _heap[i].gain;
    _heap[i].gain = gain;
    if (increased) {
      sift_up(i);
    } else {
      sift_down(i);
    }
  }

  void insert_or_update(NodeID id, Gain gain) {
    if (contains(id)) {
      update(id, gain);
    } else {
      insert(id, gain);
    }
  }

  void remove(NodeID id) {
    const std::size_t i = _pos[id];
    swap_entries(i, _heap.size() - 1);
    _pos[id] = kNone;
    _heap.pop_back();
    if (i < _heap.size()) {
      sift_up(i);
      sift_down(i);
    }
  }

  NodeID pop() {
    const NodeID id = top();
    remove(id);
    return id;
  }

  void clear() {
    for (const Entry &e : _heap) {
      _pos[e.id] = kNone;
    }
    _heap.clear();
  }

private:
  struct Entry {
    NodeID id;
    Gain gain;
    std::uint64_t tie;
  };
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

  [[nodiscard]] static bool less(const Entry &a, const Entry &b) {
    return a.gain != b.gain ? a.gain < b.gain : a.tie < b.tie;
  }

  void swap_entries(std::size_t i, std::size_t j) {
    std::swap(_heap[i], _heap[j]);
    _pos[_heap[i].id] = i;
    _pos[_heap[j].id] = j;
  }

  void sift_up(std::size_t i) {
    while (i > 0) {
      const std::size_t parent = (i - 1) / 2;
      if (!less(_heap[parent], _heap[i])) {
        break;
      }
      swap_entries(i, parent);
      i = parent;
    }
  }

  void sift_down(std::size_t i) {
    while (true) {
      const std::size_t left = 2 * i + 1;
      const std::size_t right = 2 * i + 2;
      std::size_t largest = i;
      if (left < _heap.size() && less(_heap[largest], _heap[left])) {
        largest = left;
      }
      if (right < _heap.size() && less(_heap[largest], _heap[right])) {
        largest = right;
      }
      if (largest == i) {
        break;
      }
      swap_entries(i, largest);
      i = largest;
    }
  }

  std::vector<Entry> _heap;
  std::vector<std::size_t> _pos;
  Rng *_rng;
};

} // namespace kwaymlp
