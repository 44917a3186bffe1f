#pragma once

#include <algorithm>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "kwaymlp/graph.hpp"
#include "kwaymlp/partition.hpp"
#include "kwaymlp/types.hpp"

namespace kwaymlp {

namespace detail {

/// Reads the next content line (comments stripped at '%', blanks skipped)
/// and reports the 1-based file line it came from.
inline bool next_content_line(std::istream &in, std::string &line, std::size_t &line_number) {
  while (std::getline(in, line)) {
    ++line_number;
    const std::size_t comment = line.find('%');
    if (comment != std::string::npos) {
      line.erase(comment);
    }
    if (line.find_first_not_of(" \t\r") != std::string::npos) {
      return true;
    }
  }
  return false;
}

inline std::vector<long long> parse_integers(const std::string &line, std::size_t line_number) {
  std::istringstream in(line);
  std::vector<long long> values;
  std::string token;
  while (in >> token) {
    std::size_t used = 0;
    long long value = 0;
    try {
      value = std::stoll(token, &used);
    } catch (const std::exception &) {
      throw ParseError(line_number, "not an integer: '" + token + "'");
    }
    if (used != token.size()) {
      throw ParseError(line_number, "not an integer: '" + token + "'");
    }
    values.push_back(value);
  }
  return values;
}

} // namespace detail

struct MetisReadStats {
  std::size_t merged_parallel_edges = 0;
  std::size_t dropped_self_loops = 0;
};

/// Adjacency-list graph reader. Header: node count, edge count, optional
/// format code (0 plain, 1 edge weights, 10 node weights, 11 both); one
/// 1-indexed adjacency line per node; '%' starts a comment. Every edge must
/// be listed from both endpoints with matching weights.
inline Graph read_metis(std::istream &in, MetisReadStats *stats = nullptr) {
  std::string line;
  std::size_t line_number = 0;
  if (!detail::next_content_line(in, line, line_number)) {
    throw ParseError(line_number, "missing header");
  }
  const std::vector<long long> header = detail::parse_integers(line, line_number);
  if (header.size() < 2 || header.size() > 3) {
    throw ParseError(line_number, "header must be: nodes edges [fmt]");
  }
  if (header[0] < 0 || header[1] < 0) {
    throw ParseError(line_number, "negative count in header");
  }
  const std::size_t n = static_cast<std::size_t>(header[0]);
  const std::size_t m = static_cast<std::size_t>(header[1]);
  const long long fmt = header.size() == 3 ? header[2] : 0;
  if (fmt != 0 && fmt != 1 && fmt != 10 && fmt != 11) {
    throw ParseError(line_number, "format code must be 0, 1, 10 or 11");
  }
  const bool has_node_weights = fmt == 10 || fmt == 11;
  const bool has_edge_weights = fmt == 1 || fmt == 11;

  std::vector<Weight> node_weights(n, 1);
  // Raw directed adjacency, kept per node to validate symmetry afterwards.
  std::vector<std::vector<std::pair<NodeID, Weight>>> adjacency(n);
  std::size_t directed_entries = 0;
  std::size_t self_loop_entries = 0;

  for (std::size_t u = 0; u < n; ++u) {
    if (!detail::next_content_line(in, line, line_number)) {
      throw ParseError(line_number, "expected adjacency line for node " + std::to_string(u + 1));
    }
    const std::vector<long long> values = detail::parse_integers(line, line_number);
    std::size_t pos = 0;
    if (has_node_weights) {
      if (values.empty()) {
        throw ParseError(line_number, "missing node weight");
      }
      if (values[0] < 0) {
        throw ParseError(line_number, "node weight must be non-negative");
      }
      node_weights[u] = values[0];
      pos = 1;
    }
    const std::size_t per_entry = has_edge_weights ? 2 : 1;
    if ((values.size() - pos) % per_entry != 0) {
      throw ParseError(line_number, has_edge_weights
                                        ? "expected neighbor/weight pairs"
                                        : "unexpected trailing value");
    }
    while (pos < values.size()) {
      const long long neighbor = values[pos];
      if (neighbor < 1 || static_cast<std::size_t>(neighbor) > n) {
        throw ParseError(line_number, "neighbor index " + std::to_string(neighbor) +
                                          " out of range 1.." + std::to_string(n));
      }
      Weight weight = 1;
      if (has_edge_weights) {
        weight = values[pos + 1];
        if (weight < 1) {
          throw ParseError(line_number, "edge weight must be at least 1");
        }
      }
      const NodeID v = static_cast<NodeID>(neighbor - 1);
      adjacency[u].push_back({v, weight});
      ++directed_entries;
      if (v == u) {
        ++self_loop_entries;
      }
      pos += per_entry;
    }
  }
  if (detail::next_content_line(in, line, line_number)) {
    throw ParseError(line_number, "trailing content after last adjacency line");
  }
  if ((directed_entries + self_loop_entries) % 2 != 0 ||
      (directed_entries + self_loop_entries) / 2 != m) {
    throw ParseError(1, "header edge count " + std::to_string(m) + " does not match " +
                            std::to_string(directed_entries) + " adjacency entries");
  }

  // Symmetry: u's listing of v must equal v's listing of u as weight
  // multisets (covers direction-mismatched parallel edges as well).
  {
    std::map<std::pair<NodeID, NodeID>, std::vector<Weight>> forward;
    for (NodeID u = 0; u < n; ++u) {
      for (const auto &[v, w] : adjacency[u]) {
        if (u != v) {
          forward[{u, v}].push_back(w);
        }
      }
    }
    for (auto &[key, weights] : forward) {
      std::sort(weights.begin(), weights.end());
    }
    for (const auto &[key, weights] : forward) {
      const auto mirror = forward.find({key.second, key.first});
      if (mirror == forward.end() || mirror->second != weights) {
        throw ParseError(1, "asymmetric adjacency between nodes " +
                                std::to_string(key.first + 1) + " and " +
                                std::to_string(key.second + 1));
      }
    }
  }

  std::vector<Graph::Edge> edges;
  for (NodeID u = 0; u < n; ++u) {
    for (const auto &[v, w] : adjacency[u]) {
      if (u <= v) { // self-loops pass through; from_edges drops and counts them
        edges.push_back({u, v, w});
      }
    }
  }
  Graph::BuildStats build_stats;
  Graph graph = Graph::from_edges(static_cast<NodeID>(n), edges, node_weights, &build_stats);
  if (stats != nullptr) {
    stats->merged_parallel_edges = build_stats.merged_parallel_edges;
    stats->dropped_self_loops = build_stats.dropped_self_loops;
  }
  return graph;
}

inline Graph read_metis_file(const std::string &path, MetisReadStats *stats = nullptr) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError(0, "cannot open graph file: " + path);
  }
  return read_metis(in, stats);
}

/// Writes the graph back out, choosing the lightest format code that
/// preserves all weights.
inline void write_metis(std::ostream &out, const Graph &graph) {
  bool node_weighted = false;
  bool edge_weighted = false;
  for (NodeID v = 0; v < graph.n(); ++v) {
    node_weighted = node_weighted || graph.node_weight(v) != 1;
    for (Weight w : graph.incident_weights(v)) {
      edge_weighted = edge_weighted || w != 1;
    }
  }
  out << graph.n() << ' ' << graph.m();
  if (node_weighted && edge_weighted) {
    out << " 11";
  } else if (node_weighted) {
    out << " 10";
  } else if (edge_weighted) {
    out << " 1";
  }
  out << '\n';
  for (NodeID u = 0; u < graph.n(); ++u) {
    bool first = true;
    if (node_weighted) {
      out << graph.node_weight(u);
      first = false;
    }
    const auto targets = graph.neighbors(u);
    const auto weights = graph.incident_weights(u);
    for (std::size_t i = 0; i < targets.size(); ++i) {
      if (!first) {
        out << ' ';
      }
      out << targets[i] + 1;
      if (edge_weighted) {
        out << ' ' << weights[i];
      }
      first = false;
    }
    out << '\n';
  }
}

inline void write_metis_file(const std::string &path, const Graph &graph) {
  std::ofstream out(path);
  if (!out) {
    throw Error("cannot open file for writing: " + path);
  }
  write_metis(out, graph);
}

/// One decimal block id per line, newline-terminated.
inline void write_partition(std::ostream &out, const Partition &partition) {
  for (NodeID v = 0; v < partition.graph().n(); ++v) {
    out << partition.block_of(v) << '\n';
  }
}

inline void write_partition_file(const std::string &path, const Partition &partition) {
  std::ofstream out(path);
  if (!out) {
    throw Error("cannot open file for writing: " + path);
  }
  write_partition(out, partition);
}

inline std::vector<BlockID> read_partition(std::istream &in, std::size_t n, BlockID k) {
  std::vector<BlockID> assignment;
  std::string line;
  std::size_t line_number = 0;
  while (detail::next_content_line(in, line, line_number)) {
    const std::vector<long long> values = detail::parse_integers(line, line_number);
    if (values.size() != 1) {
      throw ParseError(line_number, "expected exactly one block id");
    }
    if (values[0] < 0 || static_cast<unsigned long long>(values[0]) >= k) {
      throw ParseError(line_number, "block id " + std::to_string(values[0]) +
                                        " out of range 0.." + std::to_string(k - 1));
    }
    if (assignment.size() == n) {
      throw ParseError(line_number, "more lines than nodes");
    }
    assignment.push_back(static_cast<BlockID>(values[0]));
  }
  if (assignment.size() != n) {
    throw ParseError(line_number, "expected " + std::to_string(n) + " lines, found " +
                                      std::to_string(assignment.size()));
  }
  return assignment;
}

inline std::vector<BlockID> read_partition_file(const std::string &path, std::size_t n,
                                                BlockID k) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError(0, "cannot open partition file: " + path);
  }
  return read_partition(in, n, k);
}

} // namespace kwaymlp
