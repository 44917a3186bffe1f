#pragma once

#include <algorithm>
#include <deque>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include "kwaymlp/graph.hpp"
#include "kwaymlp/partition.hpp"
#include "kwaymlp/two_way_fm.hpp"
#include "kwaymlp/types.hpp"

namespace kwaymlp {

namespace detail {

inline void assign_block(Partition &partition, NodeID v, BlockID b) {
  if (partition.block_of(v) == kInvalidBlock) {
    partition.set_block(v, b);
  } else if (partition.block_of(v) != b) {
    partition.move(v, b);
  }
}

struct SubsetComponent {
  Weight weight = 0;
  std::vector<NodeID> nodes;
};

/// Connected components of the induced subgraph, heaviest first.
inline std::vector<SubsetComponent> subset_components(const Graph &graph,
                                                      const std::vector<NodeID> &nodes) {
  std::vector<char> in_subset(graph.n(), 0);
  for (NodeID v : nodes) {
    in_subset[v] = 1;
  }
  std::vector<char> visited(graph.n(), 0);
  std::vector<SubsetComponent> components;
  for (NodeID start : nodes) {
    if (visited[start]) {
      continue;
    }
    SubsetComponent component;
    std::deque<NodeID> bfs{start};
    visited[start] = 1;
    while (!bfs.empty()) {
      const NodeID v = bfs.front();
      bfs.pop_front();
      component.nodes.push_back(v);
      component.weight += graph.node_weight(v);
      for (NodeID u : graph.neighbors(v)) {
        if (in_subset[u] && !visited[u]) {
          visited[u] = 1;
          bfs.push_back(u);
        }
      }
    }
    components.push_back(std::move(component));
  }
  std::sort(components.begin(), components.end(),
            [](const SubsetComponent &x, const SubsetComponent &y) {
              if (x.weight != y.weight) {
                return x.weight > y.weight;
              }
              return x.nodes.front() < y.nodes.front();
            });
  return components;
}

/// Splits `nodes` between blocks [first_block, first_block+k) by bisecting
/// into ⌈k/2⌉ and ⌊k/2⌋ sub-ranges with weight targets proportional to the
/// sub-range sizes. Sides are formed by BFS region growing (whole smaller
/// components placed greedily first), polished by two-way FM whose per-side
/// cap is that side's share of the global per-block budget plus one node of
/// atomicity slack, then recursed on.
inline void bisect_range(Partition &partition, const std::vector<NodeID> &nodes,
                         BlockID first_block, BlockID k, double per_block_budget,
                         const TwoWayFMConfig &fm_config, Rng &rng) {
  const Graph &graph = partition.graph();
  if (k <= 1) {
    for (NodeID v : nodes) {
      assign_block(partition, v, first_block);
    }
    return;
  }
  if (nodes.size() < k) {
    throw InfeasibleError("bisection has fewer nodes than blocks");
  }

  const BlockID k1 = (k + 1) / 2;
  const BlockID k2 = k - k1;
  const BlockID block_a = first_block;
  const BlockID block_b = first_block + k1;
  Weight total = 0;
  for (NodeID v : nodes) {
    total += graph.node_weight(v);
  }
  const double target_a = static_cast<double>(total) * k1 / k;
  const double target_b = static_cast<double>(total) - target_a;

  std::vector<char> on_a(graph.n(), 0);
  Weight weight_a = 0;
  std::size_t count_a = 0;
  const auto take_a = [&](NodeID v) {
    on_a[v] = 1;
    weight_a += graph.node_weight(v);
    ++count_a;
  };

  // Whole components except the heaviest go to whichever side currently
  // misses more of its target; the heaviest is then grown node by node.
  auto components = subset_components(graph, nodes);
  Weight weight_b = 0;
  for (std::size_t c = 1; c < components.size(); ++c) {
    const double deficit_a = target_a - static_cast<double>(weight_a);
    const double deficit_b = target_b - static_cast<double>(weight_b);
    if (deficit_a >= deficit_b) {
      for (NodeID v : components[c].nodes) {
        take_a(v);
      }
    } else {
      weight_b += components[c].weight;
    }
  }

  const std::vector<NodeID> &grow = components.front().nodes;
  std::vector<NodeID> order;
  order.reserve(grow.size());
  {
    std::vector<char> in_grow(graph.n(), 0);
    for (NodeID v : grow) {
      in_grow[v] = 1;
    }
    const NodeID seed = grow[rng.next_index(grow.size())];
    std::deque<NodeID> bfs{seed};
    in_grow[seed] = 0;
    while (!bfs.empty()) {
      const NodeID v = bfs.front();
      bfs.pop_front();
      order.push_back(v);
      for (NodeID u : graph.neighbors(v)) {
        if (in_grow[u]) {
          in_grow[u] = 0;
          bfs.push_back(u);
        }
      }
    }
  }
  const std::size_t max_count_a = nodes.size() - k2; // leave one node per b-block
  for (NodeID v : order) {
    if (static_cast<double>(weight_a) >= target_a || count_a >= max_count_a) {
      break;
    }
    take_a(v);
  }

  // Node-count backstops for degenerate weight distributions: every
  // sub-range must receive at least one node per block.
  const auto lightest = [&](bool from_a) {
    NodeID pick = kInvalidNode;
    for (NodeID v : nodes) {
      if (static_cast<bool>(on_a[v]) == from_a &&
          (pick == kInvalidNode || graph.node_weight(v) < graph.node_weight(pick))) {
        pick = v;
      }
    }
    return pick;
  };
  while (count_a < k1) {
    take_a(lightest(false));
  }
  while (nodes.size() - count_a < k2) {
    const NodeID v = lightest(true);
    on_a[v] = 0;
    weight_a -= graph.node_weight(v);
    --count_a;
  }

  for (NodeID v : nodes) {
    assign_block(partition, v, on_a[v] ? block_a : block_b);
  }

  const double slack = static_cast<double>(graph.max_node_weight());
  const double cap_a = static_cast<double>(k1) * per_block_budget + slack;
  const double cap_b = static_cast<double>(k2) * per_block_budget + slack;
  for (int pass = 0; pass < 3; ++pass) {
    const RefinementResult polish =
        two_way_fm(partition, block_a, block_b, fm_config, rng, cap_a, cap_b);
    if (!polish.changed) {
      break;
    }
  }

  std::vector<NodeID> side_a;
  std::vector<NodeID> side_b;
  for (NodeID v : nodes) {
    (partition.block_of(v) == block_a ? side_a : side_b).push_back(v);
  }
  bisect_range(partition, side_a, block_a, k1, per_block_budget, fm_config, rng);
  bisect_range(partition, side_b, block_b, k2, per_block_budget, fm_config, rng);
}

} // namespace detail

/// One randomized partitioning trial: recursive bisection with BFS region
/// growing and FM polish. The result may violate the balance ceiling; the
/// caller filters.
inline Partition recursive_bisect(const Graph &graph, BlockID k, double epsilon, Rng &rng) {
  Partition partition(graph, k, epsilon);
  const double per_block_budget =
      (1.0 + epsilon) * static_cast<double>(graph.total_node_weight()) / static_cast<double>(k);
  std::vector<NodeID> all(graph.n());
  std::iota(all.begin(), all.end(), 0);
  detail::bisect_range(partition, all, 0, k, per_block_budget, TwoWayFMConfig{}, rng);
  return partition;
}

/// Best feasible partition over `attempts` randomized bisection trials.
inline Partition initial_partition(const Graph &graph, BlockID k, double epsilon,
                                   std::size_t attempts, Rng &rng) {
  if (k == 0) {
    throw InvalidArgumentError("k must be positive");
  }
  if (k == 1) {
    Partition partition(graph, 1, epsilon);
    for (NodeID v = 0; v < graph.n(); ++v) {
      partition.set_block(v, 0);
    }
    return partition;
  }

  std::optional<Partition> best;
  Weight best_cut = 0;
  for (std::size_t attempt = 0; attempt < std::max<std::size_t>(1, attempts); ++attempt) {
    try {
      Partition candidate = recursive_bisect(graph, k, epsilon, rng);
      if (!candidate.feasible()) {
        continue;
      }
      const Weight cut = edge_cut(candidate);
      if (!best || cut < best_cut) {
        best = std::move(candidate);
        best_cut = cut;
      }
    } catch (const InfeasibleError &) {
      continue;
    }
  }
  if (!best) {
    throw InfeasibleError("no feasible initial partition found");
  }
  return *std::move(best);
}

} // namespace kwaymlp
