#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "kwaymlp/coarsening.hpp"
#include "kwaymlp/config.hpp"
#include "kwaymlp/contraction.hpp"
#include "kwaymlp/initial_partition.hpp"
#include "kwaymlp/kway_fm.hpp"
#include "kwaymlp/partition.hpp"
#include "kwaymlp/scheduling.hpp"
#include "kwaymlp/types.hpp"

namespace kwaymlp {

/// Per-level instrumentation of one cycle: how many passes processed each
/// level and how many second trials were started there.
struct CycleStats {
  std::vector<std::size_t> invocations;
  std::vector<std::size_t> branches;

  void touch(std::size_t level) {
    if (invocations.size() <= level) {
      invocations.resize(level + 1, 0);
      branches.resize(level + 1, 0);
    }
  }
};

/// Lifts a partition of the fine graph onto its contraction. Safe whenever
/// no cut edge was contracted (which protected coarsening guarantees), so
/// the coarse partition has exactly the same cut and block weights.
inline Partition inherit_to_coarse(const Partition &fine, const Graph &coarse,
                                   const std::vector<NodeID> &fine_to_coarse) {
  std::vector<BlockID> assignment(coarse.n(), kInvalidBlock);
  for (NodeID v = 0; v < fine_to_coarse.size(); ++v) {
    assignment[fine_to_coarse[v]] = fine.block_of(v);
  }
  return Partition(coarse, fine.k(), fine.epsilon(), std::move(assignment));
}

/// One refinement wave on the current level: global k-way FM first, then the
/// configured pairwise schedule.
inline RefinementResult refine_partition(Partition &partition, const AlgorithmConfig &config,
                                         Rng &rng) {
  RefinementResult total;
  if (config.kway_enabled) {
    total = k_way_fm(partition, config.kway, rng);
  }
  const RefinementResult scheduled = run_schedule(partition, config.schedule, rng);
  total.cut_delta += scheduled.cut_delta;
  total.changed = total.changed || scheduled.changed;
  return total;
}

namespace detail {

/// Partition-protected single coarsening step: edges across the current
/// partition (when one exists) are never contracted.
inline std::optional<LevelContraction> coarsen_step(const Graph &graph, std::size_t level,
                                                    const AlgorithmConfig &config,
                                                    double weight_cap, Rng &rng,
                                                    const Partition *partition) {
  EdgeEligible forbidden;
  if (partition != nullptr) {
    forbidden = [partition](NodeID u, NodeID v) {
      return partition->block_of(u) != partition->block_of(v);
    };
  }
  return coarsen_one_level(graph, level, config.coarsening, weight_cap, rng, forbidden);
}

inline Partition base_partition(const Graph &graph, const AlgorithmConfig &config, Rng &rng,
                                const Partition *inherited) {
  if (inherited != nullptr) {
    return *inherited;
  }
  return initial_partition(graph, config.k, config.epsilon, config.initial_attempts, rng);
}

/// Recursive cycle step on the graph at `level`. Coarsens once, solves the
/// coarse graph (base partition when small, recursion otherwise), projects
/// back and refines. At branch levels a second, independently contracted
/// trial repeats this from the already-partitioned graph — its coarsening
/// protects the current cut and its descent inherits the partition, so it
/// can only improve; the better result is kept (ties keep the first).
inline Partition cycle_recurse(const Graph &graph, std::size_t level,
                               const AlgorithmConfig &config, double threshold,
                               double weight_cap, Rng &rng, const Partition *inherited,
                               CycleStats &stats) {
  stats.touch(level);
  ++stats.invocations[level];

  // Too small to coarsen at all: partition directly. Only the cycle entry
  // level can land here; refine so tiny inputs still get local search.
  if (static_cast<double>(graph.n()) < threshold) {
    Partition partition = base_partition(graph, config, rng, inherited);
    refine_partition(partition, config, rng);
    return partition;
  }

  std::optional<LevelContraction> step = coarsen_step(graph, level, config, weight_cap, rng,
                                                      inherited);
  if (!step) {
    // Nothing contractible (all edges forbidden or too heavy): bottom out.
    Partition partition = base_partition(graph, config, rng, inherited);
    refine_partition(partition, config, rng);
    return partition;
  }

  const Graph &coarse = step->contraction.coarse;
  const std::vector<NodeID> &mapping = step->contraction.fine_to_coarse;
  std::optional<Partition> coarse_inherited;
  if (inherited != nullptr) {
    coarse_inherited = inherit_to_coarse(*inherited, coarse, mapping);
  }

  const bool coarse_is_small = static_cast<double>(coarse.n()) < threshold;
  Partition coarse_partition =
      coarse_is_small
          ? base_partition(coarse, config, rng,
                           coarse_inherited ? &*coarse_inherited : nullptr)
          : cycle_recurse(coarse, level + 1, config, threshold, weight_cap, rng,
                          coarse_inherited ? &*coarse_inherited : nullptr, stats);

  Partition partition = project_partition(coarse_partition, graph, mapping);
  refine_partition(partition, config, rng);

  const bool branch_level = level > 0 && config.cycle_d > 0 && level % config.cycle_d == 0;
  const bool branch =
      !coarse_is_small && branch_level &&
      (config.cycle_type == CycleType::kW ||
       (config.cycle_type == CycleType::kF && stats.branches[level] == 0));
  if (branch) {
    ++stats.branches[level];
    std::optional<LevelContraction> second =
        coarsen_step(graph, level, config, weight_cap, rng, &partition);
    if (second) {
      const Graph &coarse2 = second->contraction.coarse;
      const std::vector<NodeID> &mapping2 = second->contraction.fine_to_coarse;
      Partition inherited2 = inherit_to_coarse(partition, coarse2, mapping2);
      Partition coarse_trial =
          static_cast<double>(coarse2.n()) < threshold
              ? inherited2
              : cycle_recurse(coarse2, level + 1, config, threshold, weight_cap, rng,
                              &inherited2, stats);
      Partition trial = project_partition(coarse_trial, graph, mapping2);
      refine_partition(trial, config, rng);
      if (edge_cut(trial) < edge_cut(partition)) {
        partition = std::move(trial);
      }
    }
  }
  return partition;
}

} // namespace detail

/// One V/W/F-cycle over the multilevel hierarchy. With an inherited
/// partition, coarsening protects its cut edges on every level and no
/// initial partitioning runs, so the result never cuts more than the input.
inline Partition run_cycle(const Graph &graph, const AlgorithmConfig &config, Rng &rng,
                           const Partition *inherited = nullptr,
                           CycleStats *stats = nullptr) {
  const double threshold = contraction_stop_threshold(graph.n(), config.k);
  const double weight_cap = contraction_weight_cap(graph.n(), config.k);
  CycleStats local;
  Partition result = detail::cycle_recurse(graph, 0, config, threshold, weight_cap, rng,
                                           inherited, local);
  if (stats != nullptr) {
    *stats = std::move(local);
  }
  return result;
}

/// Full partitioner entry point: the configured number of cycles, each one
/// inheriting its predecessor's result.
inline Partition partition_graph(const Graph &graph, const AlgorithmConfig &config, Rng &rng,
                                 const Partition *input = nullptr,
                                 std::vector<CycleStats> *stats = nullptr) {
  std::optional<Partition> current;
  if (input != nullptr) {
    current = *input;
  }
  const std::size_t repetitions = std::max<std::size_t>(1, config.cycle_repetitions);
  for (std::size_t repetition = 0; repetition < repetitions; ++repetition) {
    CycleStats cycle_stats;
    current = run_cycle(graph, config, rng, current ? &*current : nullptr, &cycle_stats);
    if (stats != nullptr) {
      stats->push_back(std::move(cycle_stats));
    }
  }
  return *std::move(current);
}

/// Cost of one cycle relative to a plain V-cycle when every level shrinks
/// by factor a and trials split every d levels.
struct CycleCostBound {
  double factor = 1.0;     // meaningful when bounded
  bool bounded = true;
  std::string divergence;  // growth-class tag when not bounded by a constant
  bool hypothesis_ok = true; // a within [1/2, 1)
};

inline CycleCostBound cycle_cost_bound(double a, std::size_t d, CycleType type) {
  CycleCostBound result;
  result.hypothesis_ok = a >= 0.5 && a < 1.0;
  const double ad = std::pow(a, static_cast<double>(d));
  switch (type) {
  case CycleType::kV:
    result.factor = 1.0;
    break;
  case CycleType::kF:
    result.factor = 1.0 / (1.0 - ad);
    break;
  case CycleType::kW: {
    const double two_ad = 2.0 * ad;
    if (two_ad < 1.0 - 1e-12) {
      result.factor = (1.0 - ad) / (1.0 - two_ad);
    } else if (two_ad < 1.0 + 1e-12) {
      result.bounded = false;
      result.divergence = "Theta(n log n)";
    } else {
      result.bounded = false;
      result.divergence = "Theta(n^(log 2 / log(1/a^d)))";
    }
    break;
  }
  }
  return result;
}

/// Linear-work-per-level cost model: level i costs b * a^i * n.
struct CycleCostModel {
  double a = 0.5;      // per-level shrink factor
  double b = 1.0;      // work per node and level
  std::size_t d = 2;   // level split parameter
  std::size_t l = 0;   // deepest level index

  [[nodiscard]] double t_v(double n) const {
    return b * n * (1.0 - std::pow(a, static_cast<double>(l) + 1.0)) / (1.0 - a);
  }
};

} // namespace kwaymlp
