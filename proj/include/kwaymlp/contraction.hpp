#pragma once

#include <utility>
#include <vector>

#include "kwaymlp/graph.hpp"
#include "kwaymlp/matching.hpp"
#include "kwaymlp/partition.hpp"

namespace kwaymlp {

struct ContractionResult {
  Graph coarse;
  std::vector<NodeID> fine_to_coarse;
};

/// Merges every matched pair into one coarse node. Coarse node weight is the
/// sum of the pair; intra-pair edges vanish, parallel coarse edges merge by
/// weight addition, so any partition keeps its cut weight under projection.
inline ContractionResult contract(const Graph &graph, const Matching &matching) {
  std::vector<NodeID> fine_to_coarse(graph.n(), kInvalidNode);
  NodeID coarse_n = 0;
  for (NodeID v = 0; v < graph.n(); ++v) {
    const NodeID p = matching.partner(v);
    if (p == kInvalidNode || v < p) {
      fine_to_coarse[v] = coarse_n++;
    }
  }
  for (NodeID v = 0; v < graph.n(); ++v) {
    if (fine_to_coarse[v] == kInvalidNode) {
      fine_to_coarse[v] = fine_to_coarse[matching.partner(v)];
    }
  }

  std::vector<Weight> coarse_weights(coarse_n, 0);
  for (NodeID v = 0; v < graph.n(); ++v) {
    coarse_weights[fine_to_coarse[v]] += graph.node_weight(v);
  }

  std::vector<Graph::Edge> coarse_edges;
  coarse_edges.reserve(graph.m());
  for (const Graph::Edge &e : graph.edges()) {
    const NodeID cu = fine_to_coarse[e.u];
    const NodeID cv = fine_to_coarse[e.v];
    if (cu != cv) {
      coarse_edges.push_back({cu, cv, e.weight});
    }
  }
  Graph coarse =
      Graph::from_edges(coarse_n, std::move(coarse_edges), std::move(coarse_weights));
  return {std::move(coarse), std::move(fine_to_coarse)};
}

/// Pulls a coarse partition down to the fine graph: each fine node takes its
/// coarse representative's block. Edge cut is unchanged by construction.
inline Partition project_partition(const Partition &coarse_partition,
                                   const Graph &fine_graph,
                                   const std::vector<NodeID> &fine_to_coarse) {
  std::vector<BlockID> assignment(fine_graph.n());
  for (NodeID v = 0; v < fine_graph.n(); ++v) {
    assignment[v] = coarse_partition.block_of(fine_to_coarse[v]);
  }
  return Partition(fine_graph, coarse_partition.k(), coarse_partition.epsilon(),
                   std::move(assignment));
}

} // namespace kwaymlp
