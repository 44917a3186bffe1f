#pragma once

#include <functional>
#include <numeric>
#include <vector>

#include "kwaymlp/graph.hpp"
#include "kwaymlp/types.hpp"

namespace kwaymlp {

/// Node-disjoint set of edges stored as a symmetric partner map.
class Matching {
public:
  explicit Matching(NodeID node_count) : _partner(node_count, kInvalidNode) {}

  [[nodiscard]] bool is_matched(NodeID v) const { return _partner[v] != kInvalidNode; }
  [[nodiscard]] NodeID partner(NodeID v) const { return _partner[v]; }
  [[nodiscard]] std::size_t size() const { return _size; }

  void match(NodeID u, NodeID v) {
    if (u == v || is_matched(u) || is_matched(v)) {
      throw InvalidArgumentError("endpoints must be distinct and unmatched");
    }
    _partner[u] = v;
    _partner[v] = u;
    ++_size;
  }

  /// Matched pairs (u, partner) with u < partner, ascending by u.
  [[nodiscard]] std::vector<std::pair<NodeID, NodeID>> pairs() const {
    std::vector<std::pair<NodeID, NodeID>> result;
    result.reserve(_size);
    for (NodeID u = 0; u < _partner.size(); ++u) {
      if (_partner[u] != kInvalidNode && u < _partner[u]) {
        result.emplace_back(u, _partner[u]);
      }
    }
    return result;
  }

private:
  std::vector<NodeID> _partner;
  std::size_t _size = 0;
};

/// True if the edge {u,v} may be contracted. Used to enforce the coarse node
/// weight cap and to keep cut edges intact during inherited-partition cycles.
using EdgeEligible = std::function<bool(NodeID, NodeID)>;

/// Visits nodes in random order; each unmatched node picks a uniformly random
/// eligible unmatched neighbor.
inline Matching random_matching(const Graph &graph, Rng &rng,
                                const EdgeEligible &eligible = {}) {
  Matching matching(graph.n());
  std::vector<NodeID> order(graph.n());
  std::iota(order.begin(), order.end(), NodeID(0));
  rng.shuffle(order);
  std::vector<NodeID> candidates;
  for (NodeID u : order) {
    if (matching.is_matched(u)) {
      continue;
    }
    candidates.clear();
    for (NodeID v : graph.neighbors(u)) {
      if (!matching.is_matched(v) && (!eligible || eligible(u, v))) {
        candidates.push_back(v);
      }
    }
    if (!candidates.empty()) {
      matching.match(u, candidates[rng.next_index(candidates.size())]);
    }
  }
  return matching;
}

} // namespace kwaymlp
