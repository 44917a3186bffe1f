#pragma once

#include <algorithm>
#include <deque>
#include <utility>
#include <vector>

#include "kwaymlp/partition.hpp"
#include "kwaymlp/quotient.hpp"
#include "kwaymlp/types.hpp"

namespace kwaymlp {

/// Zone around the cut between two blocks in which the flow problem lives.
struct Corridor {
  std::vector<NodeID> left_nodes;  // corridor nodes in the first block (includes its boundary)
  std::vector<NodeID> right_nodes; // corridor nodes in the second block
  Weight left_weight = 0;
  Weight right_weight = 0;

  [[nodiscard]] bool empty() const { return left_nodes.empty() && right_nodes.empty(); }
};

/// Grows the corridor by one BFS per side, starting from that side's pair
/// boundary. A side may take up to (1+eps_active)*c(pair)/2 - w(other block);
/// the BFS halts entirely the first time a node would overflow that budget.
/// Boundary seeds are always kept, even when they alone exceed the budget.
inline Corridor build_corridor(const Partition &partition, BlockID a, BlockID b,
                               double eps_active) {
  const Graph &graph = partition.graph();
  const Weight pair_weight = partition.block_weight(a) + partition.block_weight(b);
  Corridor corridor;

  std::vector<char> in_corridor(graph.n(), 0);
  const auto grow_side = [&](BlockID side, BlockID other, std::vector<NodeID> &out,
                             Weight &side_weight) {
    const double budget = (1.0 + eps_active) * static_cast<double>(pair_weight) / 2.0 -
                          static_cast<double>(partition.block_weight(other));
    std::deque<NodeID> bfs;
    for (NodeID v : boundary_nodes(partition, side, other)) {
      in_corridor[v] = 1;
      side_weight += graph.node_weight(v);
      out.push_back(v);
      bfs.push_back(v);
    }
    while (!bfs.empty()) {
      const NodeID v = bfs.front();
      bfs.pop_front();
      for (NodeID u : graph.neighbors(v)) {
        if (in_corridor[u] || partition.block_of(u) != side) {
          continue;
        }
        if (static_cast<double>(side_weight + graph.node_weight(u)) > budget) {
          return; // area would exceed the budget: stop this BFS
        }
        in_corridor[u] = 1;
        side_weight += graph.node_weight(u);
        out.push_back(u);
        bfs.push_back(u);
      }
    }
  };
  grow_side(a, b, corridor.left_nodes, corridor.left_weight);
  grow_side(b, a, corridor.right_nodes, corridor.right_weight);
  return corridor;
}

/// Directed capacitated graph with arcs stored in xor-pairs: arc i and i^1
/// are mutual reverses. Capacities double as residual capacities once a flow
/// has been pushed through.
class FlowNetwork {
public:
  explicit FlowNetwork(std::size_t node_count) : _first_arc_of(node_count) {}

  /// Adds arc u->v with the given capacity and its reverse v->u.
  void add_arc(std::size_t u, std::size_t v, Weight capacity, Weight reverse_capacity = 0) {
    _first_arc_of[u].push_back(_to.size());
    _to.push_back(v);
    _cap.push_back(capacity);
    _original_cap.push_back(capacity);
    _first_arc_of[v].push_back(_to.size());
    _to.push_back(u);
    _cap.push_back(reverse_capacity);
    _original_cap.push_back(reverse_capacity);
  }

  [[nodiscard]] std::size_t node_count() const { return _first_arc_of.size(); }
  [[nodiscard]] std::size_t arc_count() const { return _to.size(); }
  [[nodiscard]] const std::vector<std::size_t> &arcs_of(std::size_t v) const {
    return _first_arc_of[v];
  }
  [[nodiscard]] std::size_t arc_target(std::size_t arc) const { return _to[arc]; }
  [[nodiscard]] static std::size_t reverse_arc(std::size_t arc) { return arc ^ 1; }

  [[nodiscard]] Weight residual(std::size_t arc) const { return _cap[arc]; }
  [[nodiscard]] Weight original_capacity(std::size_t arc) const { return _original_cap[arc]; }
  [[nodiscard]] Weight flow(std::size_t arc) const { return _original_cap[arc] - _cap[arc]; }

  void push(std::size_t arc, Weight amount) {
    _cap[arc] -= amount;
    _cap[arc ^ 1] += amount;
  }

  void reset_flow() { _cap = _original_cap; }

private:
  std::vector<std::vector<std::size_t>> _first_arc_of;
  std::vector<std::size_t> _to;
  std::vector<Weight> _cap;
  std::vector<Weight> _original_cap;
};

/// s-t network over a corridor. Corridor nodes are reindexed 0..|B|-1
/// (mapping kept in corridor_nodes); s and t are the last two indices.
struct FlowProblem {
  FlowNetwork network{0};
  std::vector<NodeID> corridor_nodes; // network index -> graph node
  std::vector<char> on_left;          // network index -> belongs to first block
  std::size_t s = 0;
  std::size_t t = 0;
  Weight infinity = 0;
};

/// Every corridor-internal edge becomes two opposing arcs of its weight.
/// s feeds the left corridor border, the right corridor border drains into
/// t, both via arcs too heavy to sit in any finite cut; so a finite min cut
/// only ever severs corridor-internal edges and keeps the outside intact.
inline FlowProblem build_flow_problem(const Partition &partition, BlockID a, BlockID b,
                                      const Corridor &corridor) {
  const Graph &graph = partition.graph();
  FlowProblem problem;
  problem.corridor_nodes = corridor.left_nodes;
  problem.corridor_nodes.insert(problem.corridor_nodes.end(), corridor.right_nodes.begin(),
                                corridor.right_nodes.end());
  const std::size_t n = problem.corridor_nodes.size();
  problem.s = n;
  problem.t = n + 1;
  problem.on_left.assign(n, 0);
  for (std::size_t i = 0; i < corridor.left_nodes.size(); ++i) {
    problem.on_left[i] = 1;
  }

  std::vector<std::size_t> net_index(graph.n(), static_cast<std::size_t>(-1));
  for (std::size_t i = 0; i < n; ++i) {
    net_index[problem.corridor_nodes[i]] = i;
  }

  // Corridor-internal edges, and each side's border toward the rest of its
  // own block (other-block neighbors never force border status: an edge to a
  // third block stays cut no matter which pair side its endpoint lands on).
  std::vector<std::pair<std::size_t, std::size_t>> internal_edges;
  std::vector<Weight> internal_weights;
  std::vector<char> left_border(n, 0);
  std::vector<char> right_border(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const NodeID u = problem.corridor_nodes[i];
    const BlockID side = problem.on_left[i] ? a : b;
    const auto targets = graph.neighbors(u);
    const auto weights = graph.incident_weights(u);
    for (std::size_t e = 0; e < targets.size(); ++e) {
      const NodeID v = targets[e];
      const std::size_t j = net_index[v];
      if (j != static_cast<std::size_t>(-1)) {
        if (u < v) {
          internal_edges.push_back({i, j});
          internal_weights.push_back(weights[e]);
        }
      } else if (partition.block_of(v) == side) {
        (problem.on_left[i] ? left_border : right_border)[i] = 1;
      }
    }
  }

  Weight total_internal = 0;
  for (Weight w : internal_weights) {
    total_internal += w;
  }
  problem.infinity = total_internal + 1;

  problem.network = FlowNetwork(n + 2);
  for (std::size_t e = 0; e < internal_edges.size(); ++e) {
    problem.network.add_arc(internal_edges[e].first, internal_edges[e].second,
                            internal_weights[e], internal_weights[e]);
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (left_border[i]) {
      problem.network.add_arc(problem.s, i, problem.infinity);
    }
    if (right_border[i]) {
      problem.network.add_arc(i, problem.t, problem.infinity);
    }
  }
  return problem;
}

} // namespace kwaymlp
