#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "kwaymlp/flow_refinement.hpp"
#include "kwaymlp/kway_fm.hpp"
#include "kwaymlp/partition.hpp"
#include "kwaymlp/quotient.hpp"
#include "kwaymlp/two_way_fm.hpp"
#include "kwaymlp/types.hpp"

namespace kwaymlp {

enum class Scheduler {
  kActiveBlock,    // rounds over pairs with an active endpoint
  kQuotientRandom, // passes over all quotient edges in random order
  kKWayOnly,       // no pairwise refinement at all
};

inline const char *to_string(Scheduler scheduler) {
  switch (scheduler) {
  case Scheduler::kActiveBlock:
    return "active-block";
  case Scheduler::kQuotientRandom:
    return "quotient-random";
  case Scheduler::kKWayOnly:
    return "kway-only";
  }
  return "?";
}

inline Scheduler scheduler_from_string(const std::string &name) {
  if (name == "active-block") {
    return Scheduler::kActiveBlock;
  }
  if (name == "quotient-random") {
    return Scheduler::kQuotientRandom;
  }
  if (name == "kway-only") {
    return Scheduler::kKWayOnly;
  }
  throw ConfigError("unknown scheduler: " + name);
}

struct ScheduleConfig {
  Scheduler scheduler = Scheduler::kActiveBlock;
  std::size_t quotient_max_passes = 10;
  TwoWayFMConfig two_way;
  bool flow_enabled = true;
  FlowRefinementConfig flow;
  bool multi_try_enabled = true;
  KWayFMConfig multi_try;
};

/// One pairwise improvement: two-way FM first, then flow refinement, then a
/// localized multi-try k-way round seeded from the pair boundary. Marks the
/// blocks whose node sets changed in `block_changed` when given.
inline RefinementResult improve_pair(Partition &partition, BlockID a, BlockID b,
                                     const ScheduleConfig &config, Rng &rng,
                                     std::vector<char> *block_changed = nullptr) {
  RefinementResult total = two_way_fm(partition, a, b, config.two_way, rng);
  if (config.flow_enabled) {
    const RefinementResult flow = flow_refine_pair(partition, a, b, config.flow, rng);
    total.cut_delta += flow.cut_delta;
    total.changed = total.changed || flow.changed;
  }
  if (block_changed && total.changed) {
    (*block_changed)[a] = 1;
    (*block_changed)[b] = 1;
  }
  if (config.multi_try_enabled) {
    std::vector<NodeID> todo = boundary_nodes(partition, a, b);
    {
      std::vector<NodeID> other = boundary_nodes(partition, b, a);
      todo.insert(todo.end(), other.begin(), other.end());
    }
    const RefinementResult multi =
        multi_try_fm(partition, std::move(todo), config.multi_try, rng, a, b, block_changed);
    total.cut_delta += multi.cut_delta;
    total.changed = total.changed || multi.changed;
  }
  return total;
}

/// Refines every quotient edge once per pass, in random order, until a pass
/// changes nothing or the pass budget runs out.
inline RefinementResult quotient_random_schedule(Partition &partition,
                                                 const ScheduleConfig &config, Rng &rng) {
  RefinementResult total;
  const std::size_t max_passes = std::max<std::size_t>(1, config.quotient_max_passes);
  for (std::size_t pass = 0; pass < max_passes; ++pass) {
    std::vector<QuotientEdge> edges = quotient_edges(partition);
    rng.shuffle(edges);
    bool changed = false;
    for (const QuotientEdge &edge : edges) {
      const RefinementResult r = improve_pair(partition, edge.a, edge.b, config, rng);
      total.cut_delta += r.cut_delta;
      changed = changed || r.changed;
    }
    total.changed = total.changed || changed;
    if (!changed) {
      break;
    }
  }
  return total;
}

/// Round-based schedule: all blocks start active; each round refines the
/// permuted quotient edges with an active endpoint, deactivating everything
/// first and reactivating exactly the blocks that changed. Stops when no
/// block is active. Terminates because every committed change strictly
/// lowers (cut, sorted block weights).
inline RefinementResult active_block_schedule(Partition &partition, const ScheduleConfig &config,
                                              Rng &rng, std::size_t *rounds = nullptr) {
  const BlockID k = partition.k();
  std::vector<char> active(k, 1);
  std::vector<char> block_changed(k, 0);
  RefinementResult total;
  std::size_t round_count = 0;

  while (true) {
    std::vector<QuotientEdge> scheduled;
    for (const QuotientEdge &edge : quotient_edges(partition)) {
      if (active[edge.a] || active[edge.b]) {
        scheduled.push_back(edge);
      }
    }
    if (scheduled.empty()) {
      break;
    }
    ++round_count;
    std::fill(active.begin(), active.end(), 0);
    std::fill(block_changed.begin(), block_changed.end(), 0);
    rng.shuffle(scheduled);
    for (const QuotientEdge &edge : scheduled) {
      const RefinementResult r = improve_pair(partition, edge.a, edge.b, config, rng,
                                              &block_changed);
      total.cut_delta += r.cut_delta;
      total.changed = total.changed || r.changed;
    }
    active = block_changed;
    if (std::find(active.begin(), active.end(), 1) == active.end()) {
      break;
    }
  }
  if (rounds) {
    *rounds = round_count;
  }
  return total;
}

inline RefinementResult run_schedule(Partition &partition, const ScheduleConfig &config,
                                     Rng &rng) {
  switch (config.scheduler) {
  case Scheduler::kActiveBlock:
    return active_block_schedule(partition, config, rng);
  case Scheduler::kQuotientRandom:
    return quotient_random_schedule(partition, config, rng);
  case Scheduler::kKWayOnly:
    return {};
  }
  return {};
}

} // namespace kwaymlp
