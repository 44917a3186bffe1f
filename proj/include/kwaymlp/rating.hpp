#pragma once

#include <limits>
#include <string>

#include "kwaymlp/graph.hpp"
#include "kwaymlp/types.hpp"

namespace kwaymlp {

enum class EdgeRating {
  kWeight,       // omega(e)
  kExpansion2,   // omega(e)^2 / (c(u) * c(v))
  kInnerOuter,   // omega(e) / (Out(u) + Out(v) - 2 omega(e))
  kRandom,       // uniform tie-free ordering
};

inline std::string to_string(EdgeRating rating) {
  switch (rating) {
  case EdgeRating::kWeight: return "weight";
  case EdgeRating::kExpansion2: return "expansion2";
  case EdgeRating::kInnerOuter: return "inner_outer";
  case EdgeRating::kRandom: return "random";
  }
  return "?";
}

inline EdgeRating edge_rating_from_string(const std::string &name) {
  if (name == "weight") return EdgeRating::kWeight;
  if (name == "expansion2") return EdgeRating::kExpansion2;
  if (name == "inner_outer") return EdgeRating::kInnerOuter;
  if (name == "random") return EdgeRating::kRandom;
  throw ConfigError("unknown edge rating: " + name);
}

/// Rates one edge. `weighted_degree_u/v` are the precomputed Out() sums for
/// the endpoints; callers batching over all edges should cache them.
inline double rate_edge(EdgeRating rating, Weight edge_weight, Weight weight_u,
                        Weight weight_v, Weight weighted_degree_u,
                        Weight weighted_degree_v, Rng &rng) {
  switch (rating) {
  case EdgeRating::kWeight:
    return static_cast<double>(edge_weight);
  case EdgeRating::kExpansion2: {
    const double denom = static_cast<double>(weight_u) * static_cast<double>(weight_v);
    if (denom <= 0.0) {
      return std::numeric_limits<double>::infinity();
    }
    return static_cast<double>(edge_weight) * static_cast<double>(edge_weight) / denom;
  }
  case EdgeRating::kInnerOuter: {
    // Out() counts the edge itself on both sides, so subtracting 2*omega(e)
    // leaves only the weight leaving the contracted pair.
    const Weight denom = weighted_degree_u + weighted_degree_v - 2 * edge_weight;
    if (denom <= 0) {
      return std::numeric_limits<double>::infinity();
    }
    return static_cast<double>(edge_weight) / static_cast<double>(denom);
  }
  case EdgeRating::kRandom:
    return rng.next_double();
  }
  return 0.0;
}

/// Ratings for every undirected edge, aligned with graph.edges() order.
inline std::vector<double> rate_edges(const Graph &graph, EdgeRating rating, Rng &rng) {
  std::vector<Weight> out(graph.n());
  for (NodeID v = 0; v < graph.n(); ++v) {
    out[v] = graph.weighted_degree(v);
  }
  std::vector<double> result;
  result.reserve(graph.m());
  for (const Graph::Edge &e : graph.edges()) {
    result.push_back(rate_edge(rating, e.weight, graph.node_weight(e.u),
                               graph.node_weight(e.v), out[e.u], out[e.v], rng));
  }
  return result;
}

} // namespace kwaymlp
