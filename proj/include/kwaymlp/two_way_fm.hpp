#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "kwaymlp/partition.hpp"
#include "kwaymlp/pqueue.hpp"
#include "kwaymlp/quotient.hpp"
#include "kwaymlp/types.hpp"

namespace kwaymlp {

/// Cut decrease if `node` moved to `target`: weight toward the target block
/// minus weight kept inside its own block.
inline Gain move_gain(const Partition &partition, NodeID node, BlockID target) {
  const Graph &graph = partition.graph();
  const BlockID own = partition.block_of(node);
  const auto targets = graph.neighbors(node);
  const auto weights = graph.incident_weights(node);
  Gain gain = 0;
  for (std::size_t i = 0; i < targets.size(); ++i) {
    const BlockID b = partition.block_of(targets[i]);
    if (b == target) {
      gain += weights[i];
    } else if (b == own) {
      gain -= weights[i];
    }
  }
  return gain;
}

struct TwoWayFMConfig {
  /// Moves allowed past the last improvement, as a fraction of the pair's
  /// node count (floored, at least 1)...
  double stall_fraction = 0.05;
  /// ...or as a fixed step count when use_step_limit is set.
  std::size_t stall_steps = 15;
  bool use_step_limit = false;

  [[nodiscard]] std::size_t stall_limit(std::size_t pair_node_count) const {
    if (use_step_limit) {
      return stall_steps;
    }
    return std::max<std::size_t>(
        1, static_cast<std::size_t>(std::floor(stall_fraction *
                                               static_cast<double>(pair_node_count))));
  }
};

struct RefinementResult {
  Weight cut_delta = 0; // committed total-cut change, never positive
  bool changed = false; // any committed move (includes pure balance repairs)
};

/// Classic two-block FM restricted to blocks a and b of a k-way partition.
/// One gain queue per block, seeded with the shuffled pair boundary; each
/// step moves the top node of the queue picked by the TopGain rule; a move
/// log allows rollback to the best prefix, ranked by (cut, heavier pair
/// block) so equal-cut balance improvements are kept. The per-block weight
/// caps are usually both L_max, but bisection passes asymmetric ones.
inline RefinementResult two_way_fm(Partition &partition, BlockID a, BlockID b,
                                   const TwoWayFMConfig &config, Rng &rng, double cap_a,
                                   double cap_b) {
  if (a == b || a >= partition.k() || b >= partition.k()) {
    throw InvalidArgumentError("refinement needs two distinct blocks");
  }
  const Graph &graph = partition.graph();
  // Everything below compares weights through their overshoot so that the
  // uniform-cap case degenerates to plain heavier-block comparisons.
  const auto excess = [&](BlockID block) {
    return static_cast<double>(partition.block_weight(block)) - (block == a ? cap_a : cap_b);
  };

  std::vector<NodeID> boundary = boundary_nodes(partition, a, b);
  {
    std::vector<NodeID> other_side = boundary_nodes(partition, b, a);
    boundary.insert(boundary.end(), other_side.begin(), other_side.end());
  }
  if (boundary.empty()) {
    return {};
  }
  rng.shuffle(boundary);

  GainQueue queue_a(graph.n(), rng);
  GainQueue queue_b(graph.n(), rng);
  const auto queue_of = [&](BlockID block) -> GainQueue & {
    return block == a ? queue_a : queue_b;
  };
  const auto other_block = [&](BlockID block) { return block == a ? b : a; };
  for (NodeID v : boundary) {
    const BlockID own = partition.block_of(v);
    queue_of(own).insert(v, move_gain(partition, v, other_block(own)));
  }

  struct Move {
    NodeID node;
    BlockID from;
    Gain gain;
  };
  std::vector<Move> log;
  std::vector<char> moved(graph.n(), 0);

  const std::size_t pair_nodes =
      partition.block_node_count(a) + partition.block_node_count(b);
  const std::size_t stall_limit = config.stall_limit(pair_nodes);

  Weight delta = 0;
  double current_excess = std::max(excess(a), excess(b));
  Weight best_delta = 0;
  double best_excess = current_excess;
  std::size_t best_prefix = 0;
  std::size_t since_best = 0;

  while (!queue_a.empty() || !queue_b.empty()) {
    // TopGain: more-overshooting block first while either side exceeds its
    // cap, otherwise the queue with the larger max gain, ties random.
    GainQueue *queue = nullptr;
    const bool overloaded = excess(a) > 0 || excess(b) > 0;
    if (queue_a.empty()) {
      queue = &queue_b;
    } else if (queue_b.empty()) {
      queue = &queue_a;
    } else if (overloaded) {
      queue = excess(a) >= excess(b) ? &queue_a : &queue_b;
    } else if (queue_a.top_gain() != queue_b.top_gain()) {
      queue = queue_a.top_gain() > queue_b.top_gain() ? &queue_a : &queue_b;
    } else {
      queue = rng.next_bool() ? &queue_a : &queue_b;
    }

    const NodeID v = queue->pop();
    const BlockID from = partition.block_of(v);
    const BlockID to = other_block(from);
    const Gain gain = move_gain(partition, v, to);
    const Weight node_weight = graph.node_weight(v);
    const double new_to_excess = excess(to) + static_cast<double>(node_weight);
    const double new_from_excess = excess(from) - static_cast<double>(node_weight);
    // A move may exceed the target's cap only if it still lowers the worse
    // overshoot, which can happen solely while repairing an infeasible input.
    if (new_to_excess > 0 && std::max(new_to_excess, new_from_excess) >= current_excess) {
      continue;
    }

    partition.move(v, to);
    moved[v] = 1;
    log.push_back({v, from, gain});
    delta -= gain;
    current_excess = std::max(excess(a), excess(b));

    if (delta < best_delta || (delta == best_delta && current_excess < best_excess)) {
      best_delta = delta;
      best_excess = current_excess;
      best_prefix = log.size();
      since_best = 0;
    } else {
      ++since_best;
    }

    const auto targets = graph.neighbors(v);
    for (NodeID u : targets) {
      const BlockID bu = partition.block_of(u);
      if ((bu != a && bu != b) || moved[u]) {
        continue;
      }
      const Gain g = move_gain(partition, u, other_block(bu));
      GainQueue &q = queue_of(bu);
      if (q.contains(u)) {
        q.update(u, g);
      } else {
        // Newly boundary: u gained a neighbor across the pair cut.
        bool on_boundary = false;
        for (NodeID w : graph.neighbors(u)) {
          if (partition.block_of(w) == other_block(bu)) {
            on_boundary = true;
            break;
          }
        }
        if (on_boundary) {
          q.insert(u, g);
        }
      }
    }

    if (since_best >= stall_limit) {
      break;
    }
  }

  for (std::size_t i = log.size(); i > best_prefix; --i) {
    partition.move(log[i - 1].node, log[i - 1].from);
  }
  return {best_delta, best_prefix > 0};
}

inline RefinementResult two_way_fm(Partition &partition, BlockID a, BlockID b,
                                   const TwoWayFMConfig &config, Rng &rng) {
  return two_way_fm(partition, a, b, config, rng, partition.l_max(), partition.l_max());
}

} // namespace kwaymlp
