#pragma once

#include <cmath>
#include <vector>

#include "kwaymlp/graph.hpp"
#include "kwaymlp/types.hpp"

namespace kwaymlp {

/// Unit-weight 2D grid with 4-neighborhood adjacency.
inline Graph grid_graph(NodeID rows, NodeID cols) {
  if (rows == 0 || cols == 0) {
    throw InvalidArgumentError("grid dimensions must be positive");
  }
  const auto id = [cols](NodeID r, NodeID c) { return r * cols + c; };
  std::vector<Graph::Edge> edges;
  edges.reserve(static_cast<std::size_t>(rows) * cols * 2);
  for (NodeID r = 0; r < rows; ++r) {
    for (NodeID c = 0; c < cols; ++c) {
      if (c + 1 < cols) {
        edges.push_back({id(r, c), id(r, c + 1), 1});
      }
      if (r + 1 < rows) {
        edges.push_back({id(r, c), id(r + 1, c), 1});
      }
    }
  }
  return Graph::from_edges(rows * cols, edges);
}

/// Grid triangulated with a fixed down-right diagonal per cell, giving a
/// planar mesh with the degree profile of a Delaunay triangulation.
inline Graph triangulated_grid_graph(NodeID rows, NodeID cols) {
  if (rows == 0 || cols == 0) {
    throw InvalidArgumentError("grid dimensions must be positive");
  }
  const auto id = [cols](NodeID r, NodeID c) { return r * cols + c; };
  std::vector<Graph::Edge> edges;
  edges.reserve(static_cast<std::size_t>(rows) * cols * 3);
  for (NodeID r = 0; r < rows; ++r) {
    for (NodeID c = 0; c < cols; ++c) {
      if (c + 1 < cols) {
        edges.push_back({id(r, c), id(r, c + 1), 1});
      }
      if (r + 1 < rows) {
        edges.push_back({id(r, c), id(r + 1, c), 1});
      }
      if (c + 1 < cols && r + 1 < rows) {
        edges.push_back({id(r, c), id(r + 1, c + 1), 1});
      }
    }
  }
  return Graph::from_edges(rows * cols, edges);
}

/// Random geometric graph: n points uniform in the unit square, edges between
/// pairs closer than 0.55 * sqrt(ln n / n). Neighbor search uses a uniform
/// cell grid with cell size >= radius, so only the 3x3 cell neighborhood of a
/// point needs checking.
inline Graph random_geometric_graph(NodeID n, Rng &rng) {
  if (n < 2) {
    throw InvalidArgumentError("random geometric graph needs at least 2 nodes");
  }
  const double radius = 0.55 * std::sqrt(std::log(static_cast<double>(n)) / n);
  std::vector<double> x(n);
  std::vector<double> y(n);
  for (NodeID v = 0; v < n; ++v) {
    x[v] = rng.next_double();
    y[v] = rng.next_double();
  }

  const std::size_t cells_per_side =
      std::max<std::size_t>(1, static_cast<std::size_t>(1.0 / radius));
  const auto cell_of = [&](double coord) {
    auto c = static_cast<std::size_t>(coord * static_cast<double>(cells_per_side));
    return std::min(c, cells_per_side - 1);
  };
  std::vector<std::vector<NodeID>> cells(cells_per_side * cells_per_side);
  for (NodeID v = 0; v < n; ++v) {
    cells[cell_of(x[v]) * cells_per_side + cell_of(y[v])].push_back(v);
  }

  const double radius_sq = radius * radius;
  std::vector<Graph::Edge> edges;
  for (NodeID v = 0; v < n; ++v) {
    const std::size_t cx = cell_of(x[v]);
    const std::size_t cy = cell_of(y[v]);
    for (std::size_t dx = cx == 0 ? 0 : cx - 1; dx <= std::min(cx + 1, cells_per_side - 1);
         ++dx) {
      for (std::size_t dy = cy == 0 ? 0 : cy - 1; dy <= std::min(cy + 1, cells_per_side - 1);
           ++dy) {
        for (NodeID u : cells[dx * cells_per_side + dy]) {
          if (u <= v) {
            continue; // each pair once
          }
          const double ddx = x[u] - x[v];
          const double ddy = y[u] - y[v];
          if (ddx * ddx + ddy * ddy < radius_sq) {
            edges.push_back({v, u, 1});
          }
        }
      }
    }
  }
  return Graph::from_edges(n, edges);
}

} // namespace kwaymlp
