#pragma once

#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

#include "kwaymlp/partition.hpp"
#include "kwaymlp/pqueue.hpp"
#include "kwaymlp/quotient.hpp"
#include "kwaymlp/stop_rule.hpp"
#include "kwaymlp/two_way_fm.hpp"
#include "kwaymlp/types.hpp"

namespace kwaymlp {

struct KWayFMConfig {
  std::size_t max_rounds = 1;
  bool break_on_no_improvement = true;
  /// Adaptive rule p*mu^2 > alpha*sigma2 + ln(n); otherwise a fixed cutoff of
  /// simple_step_limit non-improving steps.
  bool adaptive_stopping = true;
  double alpha = 10.0;
  std::size_t simple_step_limit = 15;
};

/// Shared between multi-try searches within one round: nodes touched by an
/// earlier search may not be seeded or moved by a later one. Epochs avoid
/// blocking a search from its own nodes.
class TouchTracker {
public:
  explicit TouchTracker(NodeID n) : _epoch_of(n, 0) {}

  void begin_search() { ++_current; }
  void touch(NodeID v) {
    if (_epoch_of[v] == 0) {
      _epoch_of[v] = _current;
    }
  }
  [[nodiscard]] bool touched(NodeID v) const { return _epoch_of[v] != 0; }
  [[nodiscard]] bool blocked(NodeID v) const {
    return _epoch_of[v] != 0 && _epoch_of[v] != _current;
  }
  [[nodiscard]] std::size_t touched_count() const {
    std::size_t count = 0;
    for (std::uint32_t e : _epoch_of) {
      count += e != 0;
    }
    return count;
  }

private:
  std::vector<std::uint32_t> _epoch_of;
  std::uint32_t _current = 0;
};

/// One k-way search transaction over a single priority queue keyed by each
/// node's best gain toward an adjacent block. Moves go only to blocks that
/// stay under the weight ceiling; a skipped node may re-enter the queue when
/// a neighbor's move changes its gain. Rolls back to the best prefix.
inline RefinementResult k_way_fm_pass(Partition &partition, const std::vector<NodeID> &seeds,
                                      const KWayFMConfig &config, Rng &rng,
                                      TouchTracker *touched = nullptr,
                                      std::vector<char> *block_changed = nullptr) {
  const Graph &graph = partition.graph();
  const BlockID k = partition.k();
  const double l_max = partition.l_max();

  StopPolicy policy = config.adaptive_stopping
                          ? StopPolicy::adaptive(config.alpha, stop_rule_beta(graph.n()))
                          : StopPolicy::simple(config.simple_step_limit);

  // Scratch for per-node connectivity toward each block.
  std::vector<Weight> conn(k, 0);
  std::vector<BlockID> dirty;
  std::vector<BlockID> best_blocks;
  const auto best_target = [&](NodeID v) -> std::pair<BlockID, Gain> {
    const BlockID own = partition.block_of(v);
    const auto targets = graph.neighbors(v);
    const auto weights = graph.incident_weights(v);
    Weight own_weight = 0;
    dirty.clear();
    for (std::size_t i = 0; i < targets.size(); ++i) {
      const BlockID b = partition.block_of(targets[i]);
      if (b == own) {
        own_weight += weights[i];
      } else {
        if (conn[b] == 0) {
          dirty.push_back(b);
        }
        conn[b] += weights[i];
      }
    }
    BlockID choice = kInvalidBlock;
    Gain gain = 0;
    if (!dirty.empty()) {
      Weight best_conn = -1;
      best_blocks.clear();
      for (BlockID b : dirty) {
        if (conn[b] > best_conn) {
          best_conn = conn[b];
          best_blocks.clear();
          best_blocks.push_back(b);
        } else if (conn[b] == best_conn) {
          best_blocks.push_back(b);
        }
      }
      choice = best_blocks.size() == 1
                   ? best_blocks.front()
                   : best_blocks[rng.next_index(best_blocks.size())];
      gain = best_conn - own_weight;
    }
    for (BlockID b : dirty) {
      conn[b] = 0;
    }
    return {choice, gain};
  };

  GainQueue queue(graph.n(), rng);
  std::vector<char> moved(graph.n(), 0);
  for (NodeID v : seeds) {
    if (queue.contains(v) || (touched != nullptr && touched->blocked(v))) {
      continue;
    }
    const auto [target, gain] = best_target(v);
    if (target == kInvalidBlock) {
      continue;
    }
    queue.insert(v, gain);
    if (touched != nullptr) {
      touched->touch(v);
    }
  }

  struct Move {
    NodeID node;
    BlockID from;
    BlockID to;
  };
  std::vector<Move> log;
  Weight delta = 0;
  Weight best_delta = 0;
  Weight best_max = partition.max_block_weight();
  std::size_t best_prefix = 0;

  while (!queue.empty()) {
    const NodeID v = queue.pop();
    const auto [target, gain] = best_target(v);
    if (target == kInvalidBlock) {
      continue;
    }
    if (static_cast<double>(partition.block_weight(target) + graph.node_weight(v)) >
        l_max) {
      continue; // infeasible now; a later neighbor update may requeue v
    }
    const BlockID from = partition.block_of(v);
    partition.move(v, target);
    moved[v] = 1;
    log.push_back({v, from, target});
    delta -= gain;
    policy.record(static_cast<double>(gain));

    const Weight current_max = partition.max_block_weight();
    if (delta < best_delta || (delta == best_delta && current_max < best_max)) {
      best_delta = delta;
      best_max = current_max;
      best_prefix = log.size();
      policy.reset();
    } else if (policy.should_stop()) {
      break;
    }

    for (NodeID u : graph.neighbors(v)) {
      if (moved[u] || (touched != nullptr && touched->blocked(u))) {
        continue;
      }
      const auto [t, g] = best_target(u);
      if (t == kInvalidBlock) {
        if (queue.contains(u)) {
          queue.remove(u);
        }
        continue;
      }
      if (queue.contains(u)) {
        queue.update(u, g);
      } else {
        queue.insert(u, g);
        if (touched != nullptr) {
          touched->touch(u);
        }
      }
    }
  }

  for (std::size_t i = log.size(); i > best_prefix; --i) {
    partition.move(log[i - 1].node, log[i - 1].from);
  }
  if (block_changed != nullptr) {
    for (std::size_t i = 0; i < best_prefix; ++i) {
      (*block_changed)[log[i].from] = 1;
      (*block_changed)[log[i].to] = 1;
    }
  }
  return {best_delta, best_prefix > 0};
}

/// Global k-way refinement: rounds of single-queue search seeded with the
/// full partition boundary; stops early on a round without a cut improvement.
inline RefinementResult k_way_fm(Partition &partition, const std::vector<NodeID> &init_nodes,
                                 const KWayFMConfig &config, Rng &rng) {
  RefinementResult total;
  for (std::size_t round = 0; round < config.max_rounds; ++round) {
    std::vector<NodeID> seeds = round == 0 ? init_nodes : boundary_nodes(partition);
    rng.shuffle(seeds);
    const RefinementResult r = k_way_fm_pass(partition, seeds, config, rng);
    total.cut_delta += r.cut_delta;
    total.changed = total.changed || r.changed;
    if (config.break_on_no_improvement && r.cut_delta >= 0) {
      break;
    }
  }
  return total;
}

inline RefinementResult k_way_fm(Partition &partition, const KWayFMConfig &config, Rng &rng) {
  return k_way_fm(partition, boundary_nodes(partition), config, rng);
}

/// Localized k-way search: one round over a permuted todo list of pair
/// boundary nodes. Each untouched todo node seeds a search together with its
/// boundary neighbors; previously touched nodes are off-limits, so a round
/// touches at most n nodes in total.
inline RefinementResult multi_try_fm(Partition &partition, std::vector<NodeID> todo,
                                     const KWayFMConfig &config, Rng &rng,
                                     BlockID pair_a = kInvalidBlock,
                                     BlockID pair_b = kInvalidBlock,
                                     std::vector<char> *block_changed = nullptr,
                                     std::size_t *touched_count = nullptr) {
  const Graph &graph = partition.graph();
  const bool pair_mode = pair_a != kInvalidBlock && pair_b != kInvalidBlock;
  const auto is_seed_boundary = [&](NodeID v) {
    const BlockID own = partition.block_of(v);
    if (pair_mode) {
      if (own != pair_a && own != pair_b) {
        return false;
      }
      const BlockID other = own == pair_a ? pair_b : pair_a;
      for (NodeID u : graph.neighbors(v)) {
        if (partition.block_of(u) == other) {
          return true;
        }
      }
      return false;
    }
    for (NodeID u : graph.neighbors(v)) {
      if (partition.block_of(u) != own) {
        return true;
      }
    }
    return false;
  };

  rng.shuffle(todo);
  TouchTracker touched(graph.n());
  RefinementResult total;
  std::vector<NodeID> seeds;
  for (NodeID v : todo) {
    if (touched.touched(v) || !is_seed_boundary(v)) {
      continue;
    }
    seeds.clear();
    seeds.push_back(v);
    for (NodeID u : graph.neighbors(v)) {
      if (!touched.touched(u) && is_seed_boundary(u)) {
        seeds.push_back(u);
      }
    }
    touched.begin_search();
    const RefinementResult r =
        k_way_fm_pass(partition, seeds, config, rng, &touched, block_changed);
    total.cut_delta += r.cut_delta;
    total.changed = total.changed || r.changed;
  }
  if (touched_count != nullptr) {
    *touched_count = touched.touched_count();
  }
  return total;
}

} // namespace kwaymlp
