#pragma once

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <vector>

#include "kwaymlp/flow_network.hpp"
#include "kwaymlp/max_flow.hpp"
#include "kwaymlp/partition.hpp"
#include "kwaymlp/types.hpp"

namespace kwaymlp {

/// Condensed residual graph of a maximum flow. Minimum cuts correspond
/// exactly to residual-successor-closed node sets containing s and not t, so
/// after merging the forced pieces (everything s reaches must stay with it,
/// everything that reaches t must go with it), the free components form a
/// DAG whose arcs point at dependencies: out_arcs[c] must all be on the
/// source side whenever c is, so prerequisite-first sweep prefixes are
/// exactly the valid source sides.
struct MinCutDAG {
  std::vector<std::vector<std::size_t>> components; // free components, network node ids
  std::vector<std::vector<std::size_t>> out_arcs;   // DAG adjacency (deduplicated)
  std::vector<std::size_t> source_side;             // forced with s (includes s)
  std::vector<std::size_t> sink_side;               // forced with t (includes t)
};

inline MinCutDAG build_min_cut_dag(const FlowNetwork &net, std::size_t s, std::size_t t) {
  const std::size_t n = net.node_count();

  // Tarjan over arcs with positive residual capacity, iterative.
  constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> comp(n, kUnset);
  std::vector<std::size_t> index(n, kUnset);
  std::vector<std::size_t> low(n, 0);
  std::vector<char> on_stack(n, 0);
  std::vector<std::size_t> stack;
  std::size_t next_index = 0;
  std::size_t comp_count = 0;

  struct Frame {
    std::size_t v;
    std::size_t arc_pos;
  };
  std::vector<Frame> dfs;
  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] != kUnset) {
      continue;
    }
    dfs.push_back({root, 0});
    index[root] = low[root] = next_index++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!dfs.empty()) {
      Frame &frame = dfs.back();
      const std::size_t v = frame.v;
      const auto &arcs = net.arcs_of(v);
      bool descended = false;
      while (frame.arc_pos < arcs.size()) {
        const std::size_t arc = arcs[frame.arc_pos++];
        if (net.residual(arc) <= 0) {
          continue;
        }
        const std::size_t to = net.arc_target(arc);
        if (index[to] == kUnset) {
          index[to] = low[to] = next_index++;
          stack.push_back(to);
          on_stack[to] = 1;
          dfs.push_back({to, 0});
          descended = true;
          break;
        }
        if (on_stack[to]) {
          low[v] = std::min(low[v], index[to]);
        }
      }
      if (descended) {
        continue;
      }
      if (low[v] == index[v]) {
        while (true) {
          const std::size_t u = stack.back();
          stack.pop_back();
          on_stack[u] = 0;
          comp[u] = comp_count;
          if (u == v) {
            break;
          }
        }
        ++comp_count;
      }
      dfs.pop_back();
      if (!dfs.empty()) {
        low[dfs.back().v] = std::min(low[dfs.back().v], low[v]);
      }
    }
  }

  // Component-level residual adjacency.
  std::vector<std::vector<std::size_t>> comp_out(comp_count);
  std::vector<std::vector<std::size_t>> comp_in(comp_count);
  for (std::size_t v = 0; v < n; ++v) {
    for (std::size_t arc : net.arcs_of(v)) {
      if (net.residual(arc) <= 0) {
        continue;
      }
      const std::size_t cu = comp[v];
      const std::size_t cv = comp[net.arc_target(arc)];
      if (cu != cv) {
        comp_out[cu].push_back(cv);
        comp_in[cv].push_back(cu);
      }
    }
  }
  for (auto &list : comp_out) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
  }
  for (auto &list : comp_in) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
  }

  // Forced membership: residual successors of comp(s) join the source side,
  // residual predecessors of comp(t) join the sink side.
  std::vector<char> with_s(comp_count, 0);
  std::vector<char> with_t(comp_count, 0);
  {
    std::vector<std::size_t> work{comp[s]};
    with_s[comp[s]] = 1;
    while (!work.empty()) {
      const std::size_t c = work.back();
      work.pop_back();
      for (std::size_t d : comp_out[c]) {
        if (!with_s[d]) {
          with_s[d] = 1;
          work.push_back(d);
        }
      }
    }
    work.push_back(comp[t]);
    with_t[comp[t]] = 1;
    while (!work.empty()) {
      const std::size_t c = work.back();
      work.pop_back();
      for (std::size_t d : comp_in[c]) {
        if (!with_t[d]) {
          with_t[d] = 1;
          work.push_back(d);
        }
      }
    }
  }

  MinCutDAG dag;
  std::vector<std::size_t> free_id(comp_count, kUnset);
  for (std::size_t c = 0; c < comp_count; ++c) {
    if (!with_s[c] && !with_t[c]) {
      free_id[c] = dag.components.size();
      dag.components.emplace_back();
    }
  }
  for (std::size_t v = 0; v < n; ++v) {
    const std::size_t c = comp[v];
    if (with_s[c]) {
      dag.source_side.push_back(v);
    } else if (with_t[c]) {
      dag.sink_side.push_back(v);
    } else {
      dag.components[free_id[c]].push_back(v);
    }
  }

  // A residual arc u->v forces "u on the source side implies v on the source
  // side", so out_arcs[c] lists the components c depends on: they must already
  // be in any source side (equivalently, precede c in every sweep order).
  dag.out_arcs.assign(dag.components.size(), {});
  for (std::size_t c = 0; c < comp_count; ++c) {
    if (free_id[c] == kUnset) {
      continue;
    }
    for (std::size_t d : comp_out[c]) {
      if (free_id[d] != kUnset) {
        dag.out_arcs[free_id[c]].push_back(free_id[d]);
      }
    }
  }
  for (auto &list : dag.out_arcs) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
  }
  return dag;
}

/// All source sides encodable by the DAG: forced side plus every
/// prefix-closed subset of free components. Exponential; test-sized use only.
inline std::vector<std::vector<std::size_t>> enumerate_min_cut_source_sides(const MinCutDAG &dag) {
  const std::size_t m = dag.components.size();
  std::vector<std::vector<std::size_t>> result;
  if (m > 20) {
    throw InvalidArgumentError("too many free components to enumerate");
  }
  for (std::size_t mask = 0; mask < (std::size_t(1) << m); ++mask) {
    bool closed = true;
    for (std::size_t c = 0; c < m && closed; ++c) {
      if ((mask >> c & 1) == 0) {
        continue;
      }
      // c chosen: every DAG predecessor of c (its out_arcs point to
      // components that must come earlier) must be chosen too.
      for (std::size_t d : dag.out_arcs[c]) {
        if ((mask >> d & 1) == 0) {
          closed = false;
          break;
        }
      }
    }
    if (!closed) {
      continue;
    }
    std::vector<std::size_t> side = dag.source_side;
    for (std::size_t c = 0; c < m; ++c) {
      if (mask >> c & 1) {
        side.insert(side.end(), dag.components[c].begin(), dag.components[c].end());
      }
    }
    std::sort(side.begin(), side.end());
    result.push_back(std::move(side));
  }
  std::sort(result.begin(), result.end());
  return result;
}

struct MostBalancedResult {
  std::vector<char> on_source_side; // per network node, s/t included
  bool feasible = false;            // some sweep prefix met both ceilings
  Weight max_pair_block_weight = 0;
};

/// Sweeps random topological orders of the free components; every prefix is
/// a minimum cut, scored by the heavier induced pair block (ties: distance
/// from an even split). Best over all repetitions and prefixes wins.
inline MostBalancedResult most_balanced_cut(const MinCutDAG &dag, const Partition &partition,
                                            BlockID a, BlockID b,
                                            const std::vector<NodeID> &corridor_nodes,
                                            std::size_t repetitions, Rng &rng) {
  const Graph &graph = partition.graph();
  const std::size_t m = dag.components.size();
  const double l_max = partition.l_max();

  Weight corridor_weight = 0;
  Weight corridor_left_weight = 0; // corridor weight currently in block a
  for (NodeID v : corridor_nodes) {
    corridor_weight += graph.node_weight(v);
    if (partition.block_of(v) == a) {
      corridor_left_weight += graph.node_weight(v);
    }
  }
  const Weight base_a = partition.block_weight(a) - corridor_left_weight;
  const Weight base_b =
      partition.block_weight(b) - (corridor_weight - corridor_left_weight);
  const double perfect =
      static_cast<double>(partition.block_weight(a) + partition.block_weight(b)) / 2.0;

  const auto node_weight_of = [&](std::size_t net_node) -> Weight {
    return net_node < corridor_nodes.size() ? graph.node_weight(corridor_nodes[net_node])
                                            : 0; // s and t are weightless
  };
  Weight forced_source_weight = 0;
  for (std::size_t v : dag.source_side) {
    forced_source_weight += node_weight_of(v);
  }
  std::vector<Weight> comp_weight(m, 0);
  for (std::size_t c = 0; c < m; ++c) {
    for (std::size_t v : dag.components[c]) {
      comp_weight[c] += node_weight_of(v);
    }
  }

  // In-degrees under the dependency arcs: arc c->d means d must be swept
  // before c.
  std::vector<std::size_t> base_indegree(m, 0);
  for (std::size_t c = 0; c < m; ++c) {
    base_indegree[c] += dag.out_arcs[c].size();
  }
  std::vector<std::vector<std::size_t>> enables(m); // d -> components it unlocks
  for (std::size_t c = 0; c < m; ++c) {
    for (std::size_t d : dag.out_arcs[c]) {
      enables[d].push_back(c);
    }
  }

  struct Candidate {
    bool feasible = false;
    Weight max_weight = 0;
    double off_balance = 0.0;
    std::size_t prefix_len = 0;
    std::vector<std::size_t> order;
    bool valid = false;
  };
  Candidate best;
  const auto consider = [&](Candidate &sweep_best, Weight source_weight,
                            std::size_t prefix_len, const std::vector<std::size_t> &order) {
    const Weight new_a = base_a + source_weight;
    const Weight new_b = base_b + (corridor_weight - source_weight);
    const bool feasible = static_cast<double>(new_a) <= l_max &&
                          static_cast<double>(new_b) <= l_max;
    const Weight max_weight = std::max(new_a, new_b);
    const double off = std::abs(static_cast<double>(new_a) - perfect);
    const bool better =
        !sweep_best.valid ||
        (feasible && !sweep_best.feasible) ||
        (feasible == sweep_best.feasible &&
         (max_weight < sweep_best.max_weight ||
          (max_weight == sweep_best.max_weight && off < sweep_best.off_balance)));
    if (better) {
      sweep_best = {feasible, max_weight, off, prefix_len, order, true};
    }
  };

  std::vector<std::size_t> indegree;
  std::vector<std::size_t> ready;
  std::vector<std::size_t> order;
  for (std::size_t rep = 0; rep < std::max<std::size_t>(1, repetitions); ++rep) {
    indegree = base_indegree;
    ready.clear();
    order.clear();
    for (std::size_t c = 0; c < m; ++c) {
      if (indegree[c] == 0) {
        ready.push_back(c);
      }
    }
    Candidate sweep_best;
    Weight source_weight = forced_source_weight;
    consider(sweep_best, source_weight, 0, order); // the prefix-free cut
    while (!ready.empty()) {
      const std::size_t pick = rng.next_index(ready.size());
      const std::size_t c = ready[pick];
      ready[pick] = ready.back();
      ready.pop_back();
      order.push_back(c);
      source_weight += comp_weight[c];
      consider(sweep_best, source_weight, order.size(), order);
      for (std::size_t d : enables[c]) {
        if (--indegree[d] == 0) {
          ready.push_back(d);
        }
      }
    }
    if (sweep_best.valid) {
      Candidate &global = best;
      const bool better =
          !global.valid ||
          (sweep_best.feasible && !global.feasible) ||
          (sweep_best.feasible == global.feasible &&
           (sweep_best.max_weight < global.max_weight ||
            (sweep_best.max_weight == global.max_weight &&
             sweep_best.off_balance < global.off_balance)));
      if (better) {
        global = sweep_best;
      }
    }
  }

  MostBalancedResult result;
  const std::size_t net_nodes = corridor_nodes.size() + 2;
  result.on_source_side.assign(net_nodes, 0);
  for (std::size_t v : dag.source_side) {
    result.on_source_side[v] = 1;
  }
  for (std::size_t i = 0; i < best.prefix_len; ++i) {
    for (std::size_t v : dag.components[best.order[i]]) {
      result.on_source_side[v] = 1;
    }
  }
  result.feasible = best.feasible;
  result.max_pair_block_weight = best.max_weight;
  return result;
}

} // namespace kwaymlp
