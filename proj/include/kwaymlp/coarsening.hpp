#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "kwaymlp/contraction.hpp"
#include "kwaymlp/gpa.hpp"
#include "kwaymlp/graph.hpp"
#include "kwaymlp/matching.hpp"
#include "kwaymlp/partition.hpp"
#include "kwaymlp/rating.hpp"
#include "kwaymlp/types.hpp"

namespace kwaymlp {

/// Contraction stops once the node count drops below this.
inline double contraction_stop_threshold(NodeID original_n, BlockID k) {
  return std::max(60.0 * static_cast<double>(k),
                  static_cast<double>(original_n) / (60.0 * static_cast<double>(k)));
}

/// Pairs whose merged weight would exceed this are never matched. Fixed from
/// the input graph's node count for the whole hierarchy.
inline double contraction_weight_cap(NodeID original_n, BlockID k) {
  return 1.5 * static_cast<double>(original_n) / (20.0 * static_cast<double>(k));
}

struct CoarseningConfig {
  BlockID k = 2;
  /// This many finest levels are matched randomly instead of via ratings.
  std::size_t random_matching_levels = 0;
  EdgeRating finest_rating = EdgeRating::kExpansion2;
  EdgeRating coarse_rating = EdgeRating::kExpansion2;

  [[nodiscard]] EdgeRating rating_for_level(std::size_t level) const {
    return level == 0 ? finest_rating : coarse_rating;
  }
  [[nodiscard]] bool random_matching_at(std::size_t level) const {
    return level < random_matching_levels;
  }
};

/// One match-and-contract step on the graph at `level`. Returns nothing when
/// the matching came back empty (no contractible edge left).
struct LevelContraction {
  Matching matching;
  ContractionResult contraction;
};

inline std::optional<LevelContraction>
coarsen_one_level(const Graph &graph, std::size_t level, const CoarseningConfig &config,
                  double weight_cap, Rng &rng, const EdgeEligible &forbidden = {}) {
  const EdgeEligible eligible = [&](NodeID u, NodeID v) {
    if (static_cast<double>(graph.node_weight(u) + graph.node_weight(v)) > weight_cap) {
      return false;
    }
    return !forbidden || !forbidden(u, v);
  };
  Matching matching(0);
  if (config.random_matching_at(level)) {
    matching = random_matching(graph, rng, eligible);
  } else {
    const std::vector<double> ratings =
        rate_edges(graph, config.rating_for_level(level), rng);
    matching = gpa_matching(graph, ratings, rng, eligible);
  }
  if (matching.size() == 0) {
    return std::nullopt;
  }
  ContractionResult contraction = contract(graph, matching);
  return LevelContraction{std::move(matching), std::move(contraction)};
}

/// Stack of successively contracted graphs. graph(0) is the input; level i's
/// matching and mapping describe the step from graph(i) to graph(i+1).
class CoarseningHierarchy {
public:
  explicit CoarseningHierarchy(Graph finest) { _graphs.push_back(std::move(finest)); }

  void add_level(LevelContraction step) {
    _matchings.push_back(std::move(step.matching));
    _mappings.push_back(std::move(step.contraction.fine_to_coarse));
    _graphs.push_back(std::move(step.contraction.coarse));
  }

  [[nodiscard]] std::size_t depth() const { return _graphs.size(); }
  [[nodiscard]] const Graph &graph(std::size_t level) const { return _graphs[level]; }
  [[nodiscard]] const Graph &coarsest() const { return _graphs.back(); }
  [[nodiscard]] const Matching &matching(std::size_t level) const { return _matchings[level]; }
  [[nodiscard]] const std::vector<NodeID> &mapping(std::size_t level) const {
    return _mappings[level];
  }

  /// Projects a partition of graph(from_level) down to graph(to_level).
  [[nodiscard]] Partition project(const Partition &partition, std::size_t from_level,
                                  std::size_t to_level) const {
    if (to_level > from_level) {
      throw InvalidArgumentError("projection goes from coarse to fine");
    }
    Partition current = partition;
    for (std::size_t level = from_level; level > to_level; --level) {
      current = project_partition(current, _graphs[level - 1], _mappings[level - 1]);
    }
    return current;
  }

private:
  std::vector<Graph> _graphs;
  std::vector<Matching> _matchings;
  std::vector<std::vector<NodeID>> _mappings;
};

/// Iterated match-and-contract until the node count falls below the stop
/// threshold or a matching comes back empty. Both threshold and weight cap
/// use the input graph's node count. `forbid_labels`, when given, assigns a
/// label per input node; edges between different labels are never matched and
/// labels carry over to coarse nodes (this is how inherited-partition cut
/// edges are protected across all levels).
inline CoarseningHierarchy coarsen(const Graph &graph, const CoarseningConfig &config,
                                   Rng &rng,
                                   const std::vector<BlockID> *forbid_labels = nullptr) {
  if (graph.n() == 0) {
    throw InvalidArgumentError("cannot coarsen an empty graph");
  }
  if (forbid_labels != nullptr && forbid_labels->size() != graph.n()) {
    throw InvalidArgumentError("label count does not match node count");
  }
  const double threshold = contraction_stop_threshold(graph.n(), config.k);
  const double cap = contraction_weight_cap(graph.n(), config.k);

  CoarseningHierarchy hierarchy{graph};
  std::vector<BlockID> labels =
      forbid_labels != nullptr ? *forbid_labels : std::vector<BlockID>{};
  std::size_t level = 0;
  while (static_cast<double>(hierarchy.coarsest().n()) >= threshold) {
    const Graph &current = hierarchy.coarsest();
    EdgeEligible forbidden;
    if (!labels.empty()) {
      forbidden = [&labels](NodeID u, NodeID v) { return labels[u] != labels[v]; };
    }
    std::optional<LevelContraction> step =
        coarsen_one_level(current, level, config, cap, rng, forbidden);
    if (!step) {
      break;
    }
    if (!labels.empty()) {
      std::vector<BlockID> coarse_labels(step->contraction.coarse.n());
      for (NodeID v = 0; v < current.n(); ++v) {
        coarse_labels[step->contraction.fine_to_coarse[v]] = labels[v];
      }
      labels = std::move(coarse_labels);
    }
    hierarchy.add_level(std::move(*step));
    ++level;
  }
  return hierarchy;
}

struct ShrinkFactor {
  std::vector<double> ratios;   // n_{i+1} / n_i per contraction step
  double geometric_mean = 1.0;  // aggregate shrink factor a
};

inline ShrinkFactor shrink_factor(const CoarseningHierarchy &hierarchy) {
  ShrinkFactor result;
  if (hierarchy.depth() < 2) {
    return result;
  }
  for (std::size_t i = 0; i + 1 < hierarchy.depth(); ++i) {
    result.ratios.push_back(static_cast<double>(hierarchy.graph(i + 1).n()) /
                            static_cast<double>(hierarchy.graph(i).n()));
  }
  result.geometric_mean =
      std::pow(static_cast<double>(hierarchy.coarsest().n()) /
                   static_cast<double>(hierarchy.graph(0).n()),
               1.0 / static_cast<double>(result.ratios.size()));
  return result;
}

} // namespace kwaymlp
