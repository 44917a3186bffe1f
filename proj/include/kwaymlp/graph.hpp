#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <span>
#include <utility>
#include <vector>

#include "kwaymlp/types.hpp"

namespace kwaymlp {

/// Static weighted undirected graph in compressed adjacency form. Built once,
/// never mutated; coarsening produces new instances instead of editing.
class Graph {
public:
  struct Edge {
    NodeID u;
    NodeID v;
    Weight weight = 1;
  };

  struct BuildStats {
    std::size_t merged_parallel_edges = 0;
    std::size_t dropped_self_loops = 0;
  };

  Graph() = default;

  /// Builds from an undirected edge list. Self-loops are dropped, parallel
  /// edges merged by weight addition. Node weights default to 1.
  static Graph from_edges(NodeID node_count, std::vector<Edge> edges,
                          std::vector<Weight> node_weights = {},
                          BuildStats *stats = nullptr) {
    BuildStats local_stats;
    std::vector<Edge> kept;
    kept.reserve(edges.size());
    for (const Edge &e : edges) {
      if (e.u >= node_count || e.v >= node_count) {
        throw InvalidArgumentError("edge endpoint out of range");
      }
      if (e.weight < 0) {
        throw InvalidArgumentError("negative edge weight");
      }
      if (e.u == e.v) {
        ++local_stats.dropped_self_loops;
        continue;
      }
      kept.push_back({std::min(e.u, e.v), std::max(e.u, e.v), e.weight});
    }
    std::sort(kept.begin(), kept.end(), [](const Edge &a, const Edge &b) {
      return a.u != b.u ? a.u < b.u : a.v < b.v;
    });
    std::vector<Edge> merged;
    merged.reserve(kept.size());
    for (const Edge &e : kept) {
      if (!merged.empty() && merged.back().u == e.u && merged.back().v == e.v) {
        merged.back().weight += e.weight;
        ++local_stats.merged_parallel_edges;
      } else {
        merged.push_back(e);
      }
    }
    if (stats != nullptr) {
      *stats = local_stats;
    }
    return Graph(node_count, merged, std::move(node_weights));
  }

  [[nodiscard]] NodeID n() const { return static_cast<NodeID>(_node_weights.size()); }
  [[nodiscard]] EdgeID m() const { return static_cast<EdgeID>(_adj_targets.size() / 2); }

  [[nodiscard]] Weight node_weight(NodeID v) const { return _node_weights[v]; }
  [[nodiscard]] Weight total_node_weight() const { return _total_node_weight; }
  [[nodiscard]] Weight total_edge_weight() const { return _total_edge_weight; }
  [[nodiscard]] Weight max_node_weight() const { return _max_node_weight; }

  [[nodiscard]] NodeID degree(NodeID v) const {
    return static_cast<NodeID>(_first_out[v + 1] - _first_out[v]);
  }

  [[nodiscard]] std::span<const NodeID> neighbors(NodeID v) const {
    return {_adj_targets.data() + _first_out[v], _first_out[v + 1] - _first_out[v]};
  }

  [[nodiscard]] std::span<const Weight> incident_weights(NodeID v) const {
    return {_adj_weights.data() + _first_out[v], _first_out[v + 1] - _first_out[v]};
  }

  /// Sum of incident edge weights, Out(v) in rating formulas.
  [[nodiscard]] Weight weighted_degree(NodeID v) const {
    const auto weights = incident_weights(v);
    return std::accumulate(weights.begin(), weights.end(), Weight(0));
  }

  /// Weight of edge {u,v}; 0 if absent. Linear scan of the shorter list.
  [[nodiscard]] Weight edge_weight(NodeID u, NodeID v) const {
    if (degree(v) < degree(u)) {
      std::swap(u, v);
    }
    const auto targets = neighbors(u);
    for (std::size_t i = 0; i < targets.size(); ++i) {
      if (targets[i] == v) {
        return incident_weights(u)[i];
      }
    }
    return 0;
  }

  /// Undirected edge list, each edge once with u < v.
  [[nodiscard]] std::vector<Edge> edges() const {
    std::vector<Edge> result;
    result.reserve(m());
    for (NodeID u = 0; u < n(); ++u) {
      const auto targets = neighbors(u);
      const auto weights = incident_weights(u);
      for (std::size_t i = 0; i < targets.size(); ++i) {
        if (u < targets[i]) {
          result.push_back({u, targets[i], weights[i]});
        }
      }
    }
    return result;
  }

  [[nodiscard]] const std::vector<Weight> &node_weights() const { return _node_weights; }

private:
  Graph(NodeID node_count, const std::vector<Edge> &sorted_unique_edges,
        std::vector<Weight> node_weights) {
    if (node_weights.empty()) {
      node_weights.assign(node_count, 1);
    }
    if (node_weights.size() != node_count) {
      throw InvalidArgumentError("node weight count does not match node count");
    }
    for (Weight w : node_weights) {
      if (w < 0) {
        throw InvalidArgumentError("negative node weight");
      }
    }
    _node_weights = std::move(node_weights);
    _total_node_weight = std::accumulate(_node_weights.begin(), _node_weights.end(), Weight(0));
    _max_node_weight =
        _node_weights.empty() ? 0 : *std::max_element(_node_weights.begin(), _node_weights.end());

    std::vector<NodeID> degrees(node_count, 0);
    for (const Edge &e : sorted_unique_edges) {
      ++degrees[e.u];
      ++degrees[e.v];
    }
    _first_out.assign(node_count + 1, 0);
    for (NodeID v = 0; v < node_count; ++v) {
      _first_out[v + 1] = _first_out[v] + degrees[v];
    }
    _adj_targets.resize(2 * sorted_unique_edges.size());
    _adj_weights.resize(2 * sorted_unique_edges.size());
    std::vector<std::size_t> cursor(_first_out.begin(), _first_out.end() - 1);
    for (const Edge &e : sorted_unique_edges) {
      _adj_targets[cursor[e.u]] = e.v;
      _adj_weights[cursor[e.u]++] = e.weight;
      _adj_targets[cursor[e.v]] = e.u;
      _adj_weights[cursor[e.v]++] = e.weight;
      _total_edge_weight += e.weight;
    }
  }

  std::vector<std::size_t> _first_out{0};
  std::vector<NodeID> _adj_targets;
  std::vector<Weight> _adj_weights;
  std::vector<Weight> _node_weights;
  Weight _total_node_weight = 0;
  Weight _total_edge_weight = 0;
  Weight _max_node_weight = 0;
};

} // namespace kwaymlp
