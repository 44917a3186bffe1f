#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "kwaymlp/partition.hpp"

namespace kwaymlp {

/// Block-level view of a partition: one edge per block pair that shares at
/// least one cut edge, annotated with the pair cut weight.
struct QuotientEdge {
  BlockID a;
  BlockID b;
  Weight cut_weight;
};

inline std::vector<QuotientEdge> quotient_edges(const Partition &partition) {
  const Graph &graph = partition.graph();
  const BlockID k = partition.k();
  // Dense k*k accumulation is fine: k is small compared to n.
  std::vector<Weight> pair_weight(static_cast<std::size_t>(k) * k, 0);
  for (NodeID u = 0; u < graph.n(); ++u) {
    const BlockID bu = partition.block_of(u);
    const auto targets = graph.neighbors(u);
    const auto weights = graph.incident_weights(u);
    for (std::size_t i = 0; i < targets.size(); ++i) {
      const BlockID bv = partition.block_of(targets[i]);
      if (u < targets[i] && bu != bv) {
        const BlockID lo = std::min(bu, bv);
        const BlockID hi = std::max(bu, bv);
        pair_weight[static_cast<std::size_t>(lo) * k + hi] += weights[i];
      }
    }
  }
  std::vector<QuotientEdge> result;
  for (BlockID a = 0; a < k; ++a) {
    for (BlockID b = a + 1; b < k; ++b) {
      const Weight w = pair_weight[static_cast<std::size_t>(a) * k + b];
      if (w > 0) {
        result.push_back({a, b, w});
      }
    }
  }
  return result;
}

/// Nodes of block `a` with at least one neighbor in block `b`, ascending ids.
inline std::vector<NodeID> boundary_nodes(const Partition &partition, BlockID a, BlockID b) {
  const Graph &graph = partition.graph();
  std::vector<NodeID> result;
  for (NodeID u = 0; u < graph.n(); ++u) {
    if (partition.block_of(u) != a) {
      continue;
    }
    for (NodeID v : graph.neighbors(u)) {
      if (partition.block_of(v) == b) {
        result.push_back(u);
        break;
      }
    }
  }
  return result;
}

/// Nodes incident to any cut edge, ascending ids.
inline std::vector<NodeID> boundary_nodes(const Partition &partition) {
  const Graph &graph = partition.graph();
  std::vector<NodeID> result;
  for (NodeID u = 0; u < graph.n(); ++u) {
    const BlockID bu = partition.block_of(u);
    for (NodeID v : graph.neighbors(u)) {
      if (partition.block_of(v) != bu) {
        result.push_back(u);
        break;
      }
    }
  }
  return result;
}

} // namespace kwaymlp
