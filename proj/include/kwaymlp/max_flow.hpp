#pragma once

#include <algorithm>
#include <deque>
#include <vector>

#include "kwaymlp/flow_network.hpp"
#include "kwaymlp/types.hpp"

namespace kwaymlp {

/// Highest-label push-relabel with the gap heuristic, run to a complete flow
/// (heights range up to 2n so leftover excess drains back to the source).
/// The network's capacities end up as the residual of a maximum flow with
/// conservation at every node except s and t; returns the flow value.
inline Weight max_flow(FlowNetwork &net, std::size_t s, std::size_t t) {
  const std::size_t n = net.node_count();
  if (s == t) {
    throw InvalidArgumentError("source equals sink");
  }
  std::vector<std::size_t> height(n, 0);
  std::vector<Weight> excess(n, 0);
  std::vector<std::size_t> current(n, 0);
  std::vector<std::size_t> height_count(2 * n + 1, 0);
  height[s] = n;
  height_count[0] = n - 1;
  height_count[n] = 1;

  std::vector<std::vector<std::size_t>> bucket(2 * n + 1);
  std::size_t highest = 0;
  const auto activate = [&](std::size_t v) {
    if (v != s && v != t && excess[v] > 0) {
      bucket[height[v]].push_back(v);
      highest = std::max(highest, height[v]);
    }
  };

  for (std::size_t arc : net.arcs_of(s)) {
    const Weight cap = net.residual(arc);
    if (cap > 0) {
      const std::size_t v = net.arc_target(arc);
      net.push(arc, cap);
      excess[v] += cap;
      excess[s] -= cap;
      activate(v);
    }
  }

  const auto relabel = [&](std::size_t v) {
    const std::size_t old = height[v];
    std::size_t best = 2 * n;
    for (std::size_t arc : net.arcs_of(v)) {
      if (net.residual(arc) > 0) {
        best = std::min(best, height[net.arc_target(arc)] + 1);
      }
    }
    height[v] = best;
    current[v] = 0;
    --height_count[old];
    ++height_count[best];
    // Gap: once a level below n empties, nothing above it can still reach t,
    // so lift those nodes straight past n to send their excess back to s.
    if (height_count[old] == 0 && old < n) {
      for (std::size_t u = 0; u < n; ++u) {
        if (u != s && u != t && height[u] > old && height[u] < n) {
          --height_count[height[u]];
          height[u] = n + 1;
          ++height_count[n + 1];
          current[u] = 0;
        }
      }
    }
  };

  while (highest > 0 || !bucket[0].empty()) {
    while (bucket[highest].empty() && highest > 0) {
      --highest;
    }
    if (bucket[highest].empty()) {
      break;
    }
    const std::size_t v = bucket[highest].back();
    bucket[highest].pop_back();
    if (excess[v] <= 0 || height[v] != highest) {
      continue; // stale bucket entry
    }
    while (excess[v] > 0) {
      const auto &arcs = net.arcs_of(v);
      if (current[v] == arcs.size()) {
        relabel(v);
        if (height[v] >= 2 * n) {
          break;
        }
        continue;
      }
      const std::size_t arc = arcs[current[v]];
      const std::size_t to = net.arc_target(arc);
      if (net.residual(arc) > 0 && height[v] == height[to] + 1) {
        const Weight amount = std::min(excess[v], net.residual(arc));
        net.push(arc, amount);
        excess[v] -= amount;
        excess[to] += amount;
        activate(to);
      } else {
        ++current[v];
      }
    }
    if (excess[v] > 0 && height[v] < 2 * n) {
      bucket[height[v]].push_back(v);
      highest = std::max(highest, height[v]);
    }
  }
  return excess[t];
}

/// Source side of the minimum cut with the smallest source set: everything
/// still reachable from s through positive residual capacity.
inline std::vector<std::size_t> extract_min_cut(const FlowNetwork &net, std::size_t s) {
  std::vector<char> seen(net.node_count(), 0);
  std::deque<std::size_t> bfs{s};
  seen[s] = 1;
  std::vector<std::size_t> side;
  while (!bfs.empty()) {
    const std::size_t v = bfs.front();
    bfs.pop_front();
    side.push_back(v);
    for (std::size_t arc : net.arcs_of(v)) {
      const std::size_t to = net.arc_target(arc);
      if (!seen[to] && net.residual(arc) > 0) {
        seen[to] = 1;
        bfs.push_back(to);
      }
    }
  }
  std::sort(side.begin(), side.end());
  return side;
}

/// Capacity of the cut defined by a source-side set (original capacities of
/// arcs leaving the set).
inline Weight cut_capacity(const FlowNetwork &net, const std::vector<char> &on_source_side) {
  Weight capacity = 0;
  for (std::size_t v = 0; v < net.node_count(); ++v) {
    if (!on_source_side[v]) {
      continue;
    }
    for (std::size_t arc : net.arcs_of(v)) {
      if (!on_source_side[net.arc_target(arc)]) {
        capacity += net.original_capacity(arc);
      }
    }
  }
  return capacity;
}

} // namespace kwaymlp
