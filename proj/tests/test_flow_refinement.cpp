// Corridor construction around a pair cut, the s-t network built over it,
// and the adaptive corridor-flow refinement loop.
#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>
#include <vector>

#include "kwaymlp/flow_network.hpp"
#include "kwaymlp/flow_refinement.hpp"
#include "kwaymlp/max_flow.hpp"
#include "kwaymlp/partition.hpp"
#include "kwaymlp/quotient.hpp"
#include "kwaymlp/types.hpp"
#include "support/oracles.hpp"

using namespace kwaymlp;

namespace {

std::set<NodeID> as_set(const std::vector<NodeID> &nodes) {
  return {nodes.begin(), nodes.end()};
}

Graph six_path() {
  return Graph::from_edges(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}});
}

/// Ten-node path whose initial middle cut (weight 9) can only be walked out
/// to the weight-1 edge near the end by repeatedly enlarging the corridor.
Graph weighted_path() {
  return Graph::from_edges(10, {{0, 1, 2},
                                {1, 2, 2},
                                {2, 3, 2},
                                {3, 4, 2},
                                {4, 5, 9},
                                {5, 6, 3},
                                {6, 7, 2},
                                {7, 8, 1},
                                {8, 9, 2}});
}

} // namespace

TEST_CASE("zero slack keeps only the pair boundary in the corridor") {
  const Graph path = six_path();
  const Partition partition(path, 2, 0.5, {0, 0, 0, 1, 1, 1});
  // Budget per side: 1.0 * 6/2 - 3 = 0. Seeds stay, nothing may grow.
  const Corridor corridor = build_corridor(partition, 0, 1, 0.0);
  CHECK(corridor.left_nodes == std::vector<NodeID>{2});
  CHECK(corridor.right_nodes == std::vector<NodeID>{3});
  CHECK(corridor.left_weight == 1);
  CHECK(corridor.right_weight == 1);
}

TEST_CASE("slack of one pair weight admits the whole six-node path") {
  const Graph path = six_path();
  const Partition partition(path, 2, 0.5, {0, 0, 0, 1, 1, 1});
  // Budget per side: 2.0 * 6/2 - 3 = 3, exactly each block's weight.
  const Corridor corridor = build_corridor(partition, 0, 1, 1.0);
  CHECK(as_set(corridor.left_nodes) == std::set<NodeID>{0, 1, 2});
  CHECK(as_set(corridor.right_nodes) == std::set<NodeID>{3, 4, 5});
  CHECK(corridor.left_weight == 3);
  CHECK(corridor.right_weight == 3);
}

TEST_CASE("corridor network wires borders to the terminals") {
  const Graph path = six_path();
  const Partition partition(path, 2, 0.5, {0, 0, 0, 1, 1, 1});
  const Corridor corridor = build_corridor(partition, 0, 1, 0.0);
  FlowProblem problem = build_flow_problem(partition, 0, 1, corridor);

  REQUIRE(problem.corridor_nodes == std::vector<NodeID>{2, 3});
  CHECK(problem.on_left == std::vector<char>{1, 0});
  CHECK(problem.s == 2);
  CHECK(problem.t == 3);
  CHECK(problem.network.node_count() == 4);
  CHECK(problem.infinity == 2); // one internal unit edge + 1
  // One internal edge plus one border arc per terminal, each with a reverse.
  CHECK(problem.network.arc_count() == 6);
  CHECK(max_flow(problem.network, problem.s, problem.t) == 1);
}

TEST_CASE("corridor swallowing both blocks leaves no terminal arcs") {
  // With every node of the pair inside the corridor there is nothing for the
  // terminals to attach to: the only min cut empties one block, which is
  // infeasible, so refinement must reject forever and leave the partition
  // alone (while still terminating).
  const Graph path = six_path();
  Partition partition(path, 2, 0.5, {0, 0, 0, 1, 1, 1});
  const Corridor corridor = build_corridor(partition, 0, 1, 1.0);
  FlowProblem problem = build_flow_problem(partition, 0, 1, corridor);
  CHECK(problem.infinity == 6); // five unit path edges + 1
  CHECK(problem.network.arcs_of(problem.s).empty());
  CHECK(problem.network.arcs_of(problem.t).empty());
  CHECK(max_flow(problem.network, problem.s, problem.t) == 0);

  Rng rng(3);
  FlowRefinementConfig config;
  config.alpha_prime = 16.0; // every iteration rebuilds this full corridor
  const RefinementResult result = flow_refine_pair(partition, 0, 1, config, rng);
  CHECK_FALSE(result.changed);
  CHECK(partition.assignment() == std::vector<BlockID>{0, 0, 0, 1, 1, 1});
}

TEST_CASE("corridor scale cap decides how far the cut can travel") {
  const Graph path = weighted_path();
  const auto refine = [&](double alpha_prime) {
    Partition partition(path, 2, 0.4, {0, 0, 0, 0, 0, 1, 1, 1, 1, 1});
    REQUIRE(pair_cut(partition, 0, 1) == 9);
    Rng rng(11);
    FlowRefinementConfig config;
    config.alpha_prime = alpha_prime;
    const RefinementResult result = flow_refine_pair(partition, 0, 1, config, rng);
    CHECK(edge_cut(partition) == 9 + result.cut_delta);
    CHECK(partition.feasible());
    return edge_cut(partition);
  };

  // Scale 1 reaches only the weight-2 edge one step left of the start.
  CHECK(refine(1.0) == 2);
  // Doubling after the first acceptance reaches the weight-1 edge, which is
  // the best any feasible two-block split of this path can do.
  const Weight best = refine(8.0);
  CHECK(best == 1);
  CHECK(best == oracle::optimal_cut(path, 2, 0.4));
}

TEST_CASE("equal cut with strictly better balance is committed once") {
  const Graph path = six_path();
  const auto refine = [&](bool accept_equal) {
    Partition partition(path, 2, 0.4, {0, 0, 0, 0, 1, 1});
    Rng rng(5);
    FlowRefinementConfig config;
    config.accept_equal_cut_better_balance = accept_equal;
    const RefinementResult result = flow_refine_pair(partition, 0, 1, config, rng);
    CHECK(result.cut_delta == 0);
    CHECK(edge_cut(partition) == 1);
    return partition;
  };

  const Partition balanced = refine(true);
  CHECK(balanced.block_weight(0) == 3);
  CHECK(balanced.block_weight(1) == 3);

  const Partition untouched = refine(false);
  CHECK(untouched.block_weight(0) == 4);
  CHECK(untouched.block_weight(1) == 2);
}

TEST_CASE("a pair already at its minimum cut is left unchanged") {
  const Graph path = six_path();
  Partition partition(path, 2, 0.4, {0, 0, 0, 1, 1, 1});
  Rng rng(2);
  const RefinementResult result = flow_refine_pair(partition, 0, 1, {}, rng);
  CHECK_FALSE(result.changed);
  CHECK(result.cut_delta == 0);
  CHECK(partition.assignment() == std::vector<BlockID>{0, 0, 0, 1, 1, 1});
}

TEST_CASE("refining the same block or an unknown block is rejected") {
  const Graph path = six_path();
  Partition partition(path, 2, 0.4, {0, 0, 0, 1, 1, 1});
  Rng rng(1);
  CHECK_THROWS_AS(flow_refine_pair(partition, 1, 1, {}, rng), InvalidArgumentError);
  CHECK_THROWS_AS(flow_refine_pair(partition, 0, 2, {}, rng), InvalidArgumentError);
}

TEST_CASE("corridor sides respect their weight budgets on random instances") {
  Rng master(606060);
  for (int instance = 0; instance < 40; ++instance) {
    Rng rng(master.next_u64());
    const NodeID n = 10 + static_cast<NodeID>(rng.next_index(30));
    const Graph graph = oracle::random_graph(n, n, 4, 3, rng);
    std::vector<BlockID> assignment(n);
    for (NodeID v = 0; v < n; ++v) {
      assignment[v] = static_cast<BlockID>(rng.next_index(2));
    }
    const Partition partition(graph, 2, 1.0, assignment);
    const double eps_active = 0.1 + 0.2 * static_cast<double>(rng.next_index(5));
    const Corridor corridor = build_corridor(partition, 0, 1, eps_active);

    const Weight pair_weight = partition.block_weight(0) + partition.block_weight(1);
    const auto check_side = [&](BlockID side, BlockID other,
                                const std::vector<NodeID> &nodes, Weight weight) {
      const double budget = (1.0 + eps_active) * static_cast<double>(pair_weight) / 2.0 -
                            static_cast<double>(partition.block_weight(other));
      Weight seed_weight = 0;
      for (NodeID v : boundary_nodes(partition, side, other)) {
        seed_weight += graph.node_weight(v);
      }
      CHECK(static_cast<double>(weight) <=
            std::max(budget, static_cast<double>(seed_weight)));
      Weight sum = 0;
      for (NodeID v : nodes) {
        CHECK(partition.block_of(v) == side);
        sum += graph.node_weight(v);
      }
      CHECK(sum == weight);
      // Every pair-boundary node must be inside (the corridor contains the cut).
      const auto in_corridor = as_set(nodes);
      for (NodeID v : boundary_nodes(partition, side, other)) {
        CHECK(in_corridor.count(v) == 1);
      }
    };
    check_side(0, 1, corridor.left_nodes, corridor.left_weight);
    check_side(1, 0, corridor.right_nodes, corridor.right_weight);

    if (!corridor.empty() && !boundary_nodes(partition, 0, 1).empty()) {
      // The existing pair cut is itself an s-t cut of the corridor network,
      // so the max flow can never exceed it.
      FlowProblem problem = build_flow_problem(partition, 0, 1, corridor);
      const Weight flow = max_flow(problem.network, problem.s, problem.t);
      CHECK(flow <= pair_cut(partition, 0, 1));
      CHECK(flow < problem.infinity);
    }
  }
}

TEST_CASE("pair cut never increases and feasibility survives refinement") {
  Rng master(51515);
  int improved = 0;
  for (int instance = 0; instance < 60; ++instance) {
    Rng rng(master.next_u64());
    const NodeID n = 12 + static_cast<NodeID>(rng.next_index(30));
    const Graph graph = oracle::random_graph(n, 2 * n, 4, 2, rng);
    const BlockID k = 2 + static_cast<BlockID>(rng.next_index(3));
    std::vector<BlockID> assignment(n);
    for (NodeID v = 0; v < n; ++v) {
      assignment[v] = static_cast<BlockID>(rng.next_index(k));
    }
    double epsilon = 0.03;
    while (!Partition(graph, k, epsilon, assignment).feasible()) {
      epsilon += 0.25;
    }
    Partition partition(graph, k, epsilon, assignment);

    const BlockID a = static_cast<BlockID>(rng.next_index(k));
    BlockID b = static_cast<BlockID>(rng.next_index(k));
    if (b == a) {
      b = (b + 1) % k;
    }
    const Weight pair_before = pair_cut(partition, a, b);
    const Weight total_before = edge_cut(partition);
    FlowRefinementConfig config;
    config.alpha_prime = instance % 2 == 0 ? 8.0 : 2.0;
    config.most_balanced = instance % 3 != 0;
    const RefinementResult result = flow_refine_pair(partition, a, b, config, rng);

    const Weight pair_after = pair_cut(partition, a, b);
    CHECK(pair_after <= pair_before);
    CHECK(edge_cut(partition) == total_before + result.cut_delta);
    CHECK(pair_after == pair_before + result.cut_delta);
    CHECK(partition.feasible());
    improved += pair_after < pair_before;
  }
  CHECK(improved >= 8); // random pairs often share little boundary
}
