#pragma once

#include <algorithm>
#include <vector>

#include "kwaymlp/flow_network.hpp"
#include "kwaymlp/max_flow.hpp"
#include "kwaymlp/min_cut_dag.hpp"
#include "kwaymlp/partition.hpp"
#include "kwaymlp/two_way_fm.hpp"
#include "kwaymlp/types.hpp"

namespace kwaymlp {

struct FlowRefinementConfig {
  double alpha_prime = 8.0;       // corridor scale ceiling
  std::size_t max_iterations = 10;
  bool most_balanced = true;
  std::size_t toposort_repetitions = 5;
  // With most_balanced: commit a cut of equal value whose balance is
  // strictly better before declaring convergence.
  bool accept_equal_cut_better_balance = true;
};

/// Repeated corridor-flow refinement of one block pair. The corridor scale
/// starts at 1, doubles (up to alpha_prime) after every accepted improvement
/// and halves (down to 1) after every rejection. Only feasible, strictly
/// cut-decreasing reassignments are committed; a feasible non-decreasing one
/// ends the loop.
inline RefinementResult flow_refine_pair(Partition &partition, BlockID a, BlockID b,
                                         const FlowRefinementConfig &config, Rng &rng) {
  if (a == b || a >= partition.k() || b >= partition.k()) {
    throw InvalidArgumentError("flow refinement needs two distinct blocks");
  }
  RefinementResult result;
  double alpha = 1.0;
  const double epsilon = partition.epsilon();

  const auto apply = [&](const FlowProblem &problem, const std::vector<char> &on_source) {
    for (std::size_t i = 0; i < problem.corridor_nodes.size(); ++i) {
      const NodeID v = problem.corridor_nodes[i];
      const BlockID target = on_source[i] ? a : b;
      if (partition.block_of(v) != target) {
        partition.move(v, target);
      }
    }
  };

  for (std::size_t iteration = 0; iteration < config.max_iterations; ++iteration) {
    const Corridor corridor = build_corridor(partition, a, b, alpha * epsilon);
    if (corridor.empty()) {
      break; // pair shares no boundary
    }
    FlowProblem problem = build_flow_problem(partition, a, b, corridor);
    const Weight flow_value = max_flow(problem.network, problem.s, problem.t);
    const Weight old_pair_cut = pair_cut(partition, a, b);

    std::vector<char> on_source;
    bool feasible = false;
    Weight new_max = 0;
    if (config.most_balanced) {
      const MinCutDAG dag = build_min_cut_dag(problem.network, problem.s, problem.t);
      MostBalancedResult balanced = most_balanced_cut(
          dag, partition, a, b, problem.corridor_nodes, config.toposort_repetitions, rng);
      on_source = std::move(balanced.on_source_side);
      feasible = balanced.feasible;
      new_max = balanced.max_pair_block_weight;
    } else {
      on_source.assign(problem.corridor_nodes.size() + 2, 0);
      for (std::size_t v : extract_min_cut(problem.network, problem.s)) {
        on_source[v] = 1;
      }
      Weight new_a = partition.block_weight(a);
      Weight new_b = partition.block_weight(b);
      for (std::size_t i = 0; i < problem.corridor_nodes.size(); ++i) {
        const Weight w = partition.graph().node_weight(problem.corridor_nodes[i]);
        const bool was_left = problem.on_left[i];
        if (on_source[i] && !was_left) {
          new_a += w;
          new_b -= w;
        } else if (!on_source[i] && was_left) {
          new_a -= w;
          new_b += w;
        }
      }
      feasible = static_cast<double>(new_a) <= partition.l_max() &&
                 static_cast<double>(new_b) <= partition.l_max();
      new_max = std::max(new_a, new_b);
    }

    if (feasible && flow_value < old_pair_cut) {
      apply(problem, on_source);
      result.cut_delta += flow_value - old_pair_cut;
      result.changed = true;
      alpha = std::min(2.0 * alpha, config.alpha_prime);
      continue;
    }
    if (feasible) {
      // Converged: a feasible cut exists but it is no smaller. Still worth
      // committing when it rebalances the pair at the same cut value.
      if (config.most_balanced && config.accept_equal_cut_better_balance &&
          flow_value == old_pair_cut &&
          new_max < std::max(partition.block_weight(a), partition.block_weight(b))) {
        apply(problem, on_source);
        result.changed = true;
      }
      break;
    }
    alpha = std::max(alpha / 2.0, 1.0);
  }
  return result;
}

} // namespace kwaymlp
