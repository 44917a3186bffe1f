#pragma once

#include <algorithm>
#include <array>
#include <limits>
#include <numeric>
#include <vector>

#include "kwaymlp/graph.hpp"
#include "kwaymlp/matching.hpp"
#include "kwaymlp/types.hpp"

namespace kwaymlp {

/// Edge indices sorted by rating descending. Equal ratings keep a seeded
/// random relative order (pre-shuffle, then stable sort).
inline std::vector<EdgeID> rating_sorted_edge_order(std::size_t edge_count,
                                                    const std::vector<double> &ratings,
                                                    Rng &rng) {
  std::vector<EdgeID> order(edge_count);
  std::iota(order.begin(), order.end(), EdgeID(0));
  rng.shuffle(order);
  std::stable_sort(order.begin(), order.end(),
                   [&](EdgeID a, EdgeID b) { return ratings[a] > ratings[b]; });
  return order;
}

namespace detail {

/// Union-find over nodes of the growing path/cycle collection. Each set
/// tracks its edge count so that closing a cycle can be restricted to paths
/// with an odd number of edges (which yields an even cycle).
class PathForest {
public:
  explicit PathForest(NodeID n) : _parent(n), _size(n, 1), _edge_count(n, 0) {
    std::iota(_parent.begin(), _parent.end(), NodeID(0));
  }

  NodeID find(NodeID v) {
    while (_parent[v] != v) {
      _parent[v] = _parent[_parent[v]];
      v = _parent[v];
    }
    return v;
  }

  [[nodiscard]] std::size_t edge_count(NodeID root) const { return _edge_count[root]; }

  /// Joins the sets of u and v and accounts for one new edge.
  void add_edge(NodeID u, NodeID v) {
    NodeID ru = find(u);
    NodeID rv = find(v);
    if (ru == rv) {
      ++_edge_count[ru]; // closes a cycle
      return;
    }
    if (_size[ru] < _size[rv]) {
      std::swap(ru, rv);
    }
    _parent[rv] = ru;
    _size[ru] += _size[rv];
    _edge_count[ru] += _edge_count[rv] + 1;
  }

private:
  std::vector<NodeID> _parent;
  std::vector<std::size_t> _size;
  std::vector<std::size_t> _edge_count;
};

/// Max-weight independent edge subset of a path, edges given in path order.
/// best[i] = max(best[i-1], best[i-2] + s_i). Returns chosen flags.
inline double path_dp(const std::vector<double> &s, std::vector<bool> &chosen) {
  const std::size_t len = s.size();
  chosen.assign(len, false);
  if (len == 0) {
    return 0.0;
  }
  std::vector<double> best(len + 1, 0.0);
  best[1] = std::max(0.0, s[0]);
  for (std::size_t i = 2; i <= len; ++i) {
    best[i] = std::max(best[i - 1], best[i - 2] + s[i - 1]);
  }
  std::size_t i = len;
  while (i >= 1) {
    if (best[i] == best[i - 1]) {
      --i;
    } else {
      chosen[i - 1] = true;
      if (i < 2) {
        break;
      }
      i -= 2;
    }
  }
  return best[len];
}

/// Same for an even cycle: either the first edge is out (plain path on the
/// rest) or in (forcing both neighbors out).
inline void cycle_dp(const std::vector<double> &s, std::vector<bool> &chosen) {
  const std::size_t len = s.size();
  std::vector<bool> without_first;
  const double value_out =
      path_dp(std::vector<double>(s.begin() + 1, s.end()), without_first);
  std::vector<bool> inner;
  const double value_in =
      s[0] + path_dp(std::vector<double>(s.begin() + 2, s.end() - 1), inner);
  chosen.assign(len, false);
  if (value_in > value_out) {
    chosen[0] = true;
    for (std::size_t i = 0; i < inner.size(); ++i) {
      chosen[i + 2] = inner[i];
    }
  } else {
    for (std::size_t i = 0; i < without_first.size(); ++i) {
      chosen[i + 1] = without_first[i];
    }
  }
}

/// Greedy matching over a fixed edge order: take each edge whose endpoints are
/// both still free. Returns the summed rating of the matched edges.
inline double greedy_over_order(const std::vector<Graph::Edge> &edges,
                                const std::vector<EdgeID> &order,
                                const std::vector<double> &ratings,
                                const EdgeEligible &eligible, Matching &matching) {
  double total = 0.0;
  for (EdgeID e : order) {
    const NodeID u = edges[e].u;
    const NodeID v = edges[e].v;
    if (!matching.is_matched(u) && !matching.is_matched(v) &&
        (!eligible || eligible(u, v))) {
      matching.match(u, v);
      total += ratings[e];
    }
  }
  return total;
}

} // namespace detail

/// Global path algorithm: grows node-disjoint paths and even cycles from the
/// rating-sorted edge stream, then picks the optimal matching inside each
/// structure by dynamic programming. The greedy matching over the same edge
/// order is computed alongside and returned instead whenever it scores higher,
/// so the result never trails greedy on total rating.
inline Matching gpa_matching(const Graph &graph, const std::vector<double> &ratings,
                             Rng &rng, const EdgeEligible &eligible = {}) {
  constexpr EdgeID kNoEdge = std::numeric_limits<EdgeID>::max();
  const std::vector<Graph::Edge> edges = graph.edges();
  if (ratings.size() != edges.size()) {
    throw InvalidArgumentError("rating count does not match edge count");
  }
  const std::vector<EdgeID> order =
      rating_sorted_edge_order(edges.size(), ratings, rng);

  std::vector<NodeID> degree(graph.n(), 0);
  std::vector<std::array<EdgeID, 2>> incident(graph.n(), {kNoEdge, kNoEdge});
  detail::PathForest forest(graph.n());
  std::vector<EdgeID> applied;
  applied.reserve(edges.size());

  for (EdgeID e : order) {
    const NodeID u = edges[e].u;
    const NodeID v = edges[e].v;
    if (degree[u] >= 2 || degree[v] >= 2) {
      continue;
    }
    if (eligible && !eligible(u, v)) {
      continue;
    }
    const NodeID ru = forest.find(u);
    if (ru == forest.find(v) && forest.edge_count(ru) % 2 == 0) {
      continue; // closing here would make an odd cycle
    }
    forest.add_edge(u, v);
    incident[u][degree[u]++] = e;
    incident[v][degree[v]++] = e;
    applied.push_back(e);
  }

  Matching matching(graph.n());
  double dp_total = 0.0;
  std::vector<bool> visited(graph.n(), false);
  std::vector<EdgeID> walk;
  std::vector<double> walk_ratings;
  std::vector<bool> chosen;

  const auto other_endpoint = [&](EdgeID e, NodeID at) {
    return edges[e].u == at ? edges[e].v : edges[e].u;
  };
  const auto traverse = [&](NodeID start, bool is_cycle) {
    walk.clear();
    NodeID at = start;
    EdgeID via = kNoEdge;
    visited[at] = true;
    while (true) {
      EdgeID next = kNoEdge;
      for (EdgeID cand : incident[at]) {
        if (cand != kNoEdge && cand != via) {
          next = cand;
          break;
        }
      }
      if (next == kNoEdge) {
        break;
      }
      walk.push_back(next);
      at = other_endpoint(next, at);
      via = next;
      if (at == start && is_cycle) {
        break;
      }
      visited[at] = true;
    }
  };
  const auto commit = [&]() {
    walk_ratings.clear();
    for (EdgeID e : walk) {
      walk_ratings.push_back(ratings[e]);
    }
    if (walk.size() == 1) {
      chosen.assign(1, true);
    } else {
      chosen.clear();
      detail::path_dp(walk_ratings, chosen);
    }
    for (std::size_t i = 0; i < walk.size(); ++i) {
      if (chosen[i]) {
        matching.match(edges[walk[i]].u, edges[walk[i]].v);
        dp_total += walk_ratings[i];
      }
    }
  };

  // Paths first (walk from each degree-1 endpoint), then the even cycles.
  for (NodeID v = 0; v < graph.n(); ++v) {
    if (!visited[v] && degree[v] == 1) {
      traverse(v, /*is_cycle=*/false);
      commit();
    }
  }
  for (NodeID v = 0; v < graph.n(); ++v) {
    if (!visited[v] && degree[v] == 2) {
      traverse(v, /*is_cycle=*/true);
      walk_ratings.clear();
      for (EdgeID e : walk) {
        walk_ratings.push_back(ratings[e]);
      }
      detail::cycle_dp(walk_ratings, chosen);
      for (std::size_t i = 0; i < walk.size(); ++i) {
        if (chosen[i]) {
          matching.match(edges[walk[i]].u, edges[walk[i]].v);
          dp_total += walk_ratings[i];
        }
      }
    }
  }

  // The path/cycle collection can exclude edges greedy would take (a node may
  // reach collection degree 2 through edges greedy rejected), so the DP result
  // alone is not guaranteed to dominate greedy. Keep whichever scores higher;
  // ties keep the DP result.
  Matching greedy(graph.n());
  const double greedy_total =
      detail::greedy_over_order(edges, order, ratings, eligible, greedy);
  return greedy_total > dp_total ? greedy : matching;
}

/// Greedy matching over the same rating-sorted edge stream: take each edge
/// whose endpoints are both still free. Quality floor for gpa_matching.
inline Matching greedy_matching(const Graph &graph, const std::vector<double> &ratings,
                                Rng &rng, const EdgeEligible &eligible = {}) {
  const std::vector<Graph::Edge> edges = graph.edges();
  if (ratings.size() != edges.size()) {
    throw InvalidArgumentError("rating count does not match edge count");
  }
  const std::vector<EdgeID> order =
      rating_sorted_edge_order(edges.size(), ratings, rng);
  Matching matching(graph.n());
  detail::greedy_over_order(edges, order, ratings, eligible, matching);
  return matching;
}

/// Sum of ratings over matched edges.
inline double matching_rating(const Graph &graph, const Matching &matching,
                              const std::vector<double> &ratings) {
  const std::vector<Graph::Edge> edges = graph.edges();
  double total = 0.0;
  for (EdgeID e = 0; e < edges.size(); ++e) {
    if (matching.partner(edges[e].u) == edges[e].v) {
      total += ratings[e];
    }
  }
  return total;
}

} // namespace kwaymlp
