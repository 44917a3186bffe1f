#pragma once

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "kwaymlp/graph.hpp"
#include "kwaymlp/types.hpp"

namespace kwaymlp {

/// Per-block weight ceiling: every block must stay at or below
/// (1 + eps) * ceil(total weight / k) rounded via the additive max-node-weight
/// slack so that a single heavy node can always be placed somewhere.
inline double compute_l_max(const Graph &graph, BlockID k, double epsilon) {
  if (k == 0) {
    throw InvalidArgumentError("k must be positive");
  }
  return (1.0 + epsilon) * static_cast<double>(graph.total_node_weight()) /
             static_cast<double>(k) +
         static_cast<double>(graph.max_node_weight());
}

/// Block assignment plus cached block weights/counts. Mutation goes through
/// set_block/move so the caches stay consistent.
class Partition {
public:
  Partition(const Graph &graph, BlockID k, double epsilon)
      : _graph(&graph), _k(k), _epsilon(epsilon),
        _l_max(compute_l_max(graph, k, epsilon)),
        _block_of(graph.n(), kInvalidBlock), _block_weights(k, 0),
        _block_node_counts(k, 0) {}

  Partition(const Graph &graph, BlockID k, double epsilon,
            std::vector<BlockID> assignment)
      : Partition(graph, k, epsilon) {
    if (assignment.size() != graph.n()) {
      throw InvalidArgumentError("assignment size does not match node count");
    }
    for (NodeID v = 0; v < graph.n(); ++v) {
      set_block(v, assignment[v]);
    }
  }

  [[nodiscard]] const Graph &graph() const { return *_graph; }
  [[nodiscard]] BlockID k() const { return _k; }
  [[nodiscard]] double epsilon() const { return _epsilon; }
  [[nodiscard]] double l_max() const { return _l_max; }

  [[nodiscard]] BlockID block_of(NodeID v) const { return _block_of[v]; }
  [[nodiscard]] Weight block_weight(BlockID b) const { return _block_weights[b]; }
  [[nodiscard]] NodeID block_node_count(BlockID b) const { return _block_node_counts[b]; }
  [[nodiscard]] const std::vector<BlockID> &assignment() const { return _block_of; }

  /// First assignment of an unassigned node.
  void set_block(NodeID v, BlockID b) {
    if (b >= _k) {
      throw InvalidArgumentError("block id out of range");
    }
    if (_block_of[v] != kInvalidBlock) {
      throw InvalidArgumentError("node already assigned; use move");
    }
    _block_of[v] = b;
    _block_weights[b] += _graph->node_weight(v);
    ++_block_node_counts[b];
  }

  void move(NodeID v, BlockID to) {
    if (to >= _k) {
      throw InvalidArgumentError("block id out of range");
    }
    const BlockID from = _block_of[v];
    if (from == to) {
      return;
    }
    const Weight w = _graph->node_weight(v);
    _block_weights[from] -= w;
    --_block_node_counts[from];
    _block_weights[to] += w;
    ++_block_node_counts[to];
    _block_of[v] = to;
  }

  [[nodiscard]] bool all_assigned() const {
    for (BlockID b : _block_of) {
      if (b == kInvalidBlock) {
        return false;
      }
    }
    return true;
  }

  /// True iff every block weight is within the ceiling.
  [[nodiscard]] bool feasible() const {
    for (Weight w : _block_weights) {
      if (static_cast<double>(w) > _l_max) {
        return false;
      }
    }
    return true;
  }

  [[nodiscard]] Weight max_block_weight() const {
    Weight best = 0;
    for (Weight w : _block_weights) {
      best = std::max(best, w);
    }
    return best;
  }

  /// max_b c(b) / (c(V)/k); 1.0 means perfectly balanced.
  [[nodiscard]] double balance() const {
    const double avg =
        static_cast<double>(_graph->total_node_weight()) / static_cast<double>(_k);
    return avg > 0.0 ? static_cast<double>(max_block_weight()) / avg : 0.0;
  }

private:
  const Graph *_graph;
  BlockID _k;
  double _epsilon;
  double _l_max;
  std::vector<BlockID> _block_of;
  std::vector<Weight> _block_weights;
  std::vector<NodeID> _block_node_counts;
};

/// Total weight of edges whose endpoints lie in different blocks.
inline Weight edge_cut(const Partition &partition) {
  const Graph &graph = partition.graph();
  Weight cut = 0;
  for (NodeID u = 0; u < graph.n(); ++u) {
    const auto targets = graph.neighbors(u);
    const auto weights = graph.incident_weights(u);
    for (std::size_t i = 0; i < targets.size(); ++i) {
      if (u < targets[i] && partition.block_of(u) != partition.block_of(targets[i])) {
        cut += weights[i];
      }
    }
  }
  return cut;
}

/// Heaviest block relative to the perfectly balanced block weight; 1.0 means
/// perfectly balanced, (1 + eps) is roughly the feasibility ceiling.
inline double partition_balance(const Partition &partition) {
  Weight max_weight = 0;
  for (BlockID b = 0; b < partition.k(); ++b) {
    max_weight = std::max(max_weight, partition.block_weight(b));
  }
  const double average = static_cast<double>(partition.graph().total_node_weight()) /
                         static_cast<double>(partition.k());
  return average > 0.0 ? static_cast<double>(max_weight) / average : 0.0;
}

/// Cut restricted to edges running between the two given blocks.
inline Weight pair_cut(const Partition &partition, BlockID a, BlockID b) {
  const Graph &graph = partition.graph();
  Weight cut = 0;
  for (NodeID u = 0; u < graph.n(); ++u) {
    if (partition.block_of(u) != a) {
      continue;
    }
    const auto targets = graph.neighbors(u);
    const auto weights = graph.incident_weights(u);
    for (std::size_t i = 0; i < targets.size(); ++i) {
      if (partition.block_of(targets[i]) == b) {
        cut += weights[i];
      }
    }
  }
  return cut;
}

} // namespace kwaymlp
