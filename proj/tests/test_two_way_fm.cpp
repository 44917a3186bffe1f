// Two-block FM refinement: gain computation, TopGain queue selection with
// rollback to the best prefix, stall cutoffs, and balance handling.
#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <vector>

#include "kwaymlp/graph.hpp"
#include "kwaymlp/partition.hpp"
#include "kwaymlp/two_way_fm.hpp"
#include "kwaymlp/types.hpp"
#include "support/oracles.hpp"

using namespace kwaymlp;

namespace {

/// Random assignment plus an epsilon just loose enough to make it feasible.
Partition random_feasible_partition(const Graph &graph, BlockID k, Rng &rng) {
  std::vector<BlockID> assignment(graph.n());
  for (NodeID v = 0; v < graph.n(); ++v) {
    assignment[v] = static_cast<BlockID>(rng.next_index(k));
  }
  double epsilon = 0.03;
  while (true) {
    Partition candidate(graph, k, epsilon, assignment);
    if (candidate.feasible()) {
      return candidate;
    }
    epsilon += 0.25;
  }
}

} // namespace

TEST_CASE("move gain counts target edges minus internal edges") {
  // Node 0: three unit edges into block 1 (nodes 1,2,3), one internal (4).
  const Graph graph =
      Graph::from_edges(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
  const Partition partition(graph, 2, 2.0, {0, 1, 1, 1, 0});
  CHECK(move_gain(partition, 0, 1) == 2);

  // Interior node: every edge internal, gain = -degree.
  const Partition all_zero(graph, 2, 4.0, {0, 0, 0, 0, 0});
  CHECK(move_gain(all_zero, 0, 1) == -4);
}

TEST_CASE("move gain equals the recomputed cut difference") {
  Rng master(31);
  for (int instance = 0; instance < 50; ++instance) {
    Rng rng(master.next_u64());
    const Graph graph = oracle::random_graph(6 + rng.next_index(12), 14, 7, 3, rng);
    const BlockID k = 2 + static_cast<BlockID>(rng.next_index(3));
    std::vector<BlockID> assignment(graph.n());
    for (NodeID v = 0; v < graph.n(); ++v) {
      assignment[v] = static_cast<BlockID>(rng.next_index(k));
    }
    const Partition partition(graph, k, 10.0, assignment);
    for (int probe = 0; probe < 10; ++probe) {
      const NodeID v = static_cast<NodeID>(rng.next_index(graph.n()));
      BlockID target = static_cast<BlockID>(rng.next_index(k));
      if (target == partition.block_of(v)) {
        target = (target + 1) % k;
      }
      CHECK(move_gain(partition, v, target) ==
            oracle::recomputed_gain(graph, assignment, v, target));
    }
  }
}

TEST_CASE("stall limit is a floored fraction with a lower bound of one") {
  TwoWayFMConfig fractional;
  fractional.stall_fraction = 0.05;
  CHECK(fractional.stall_limit(100) == 5);
  CHECK(fractional.stall_limit(119) == 5);
  CHECK(fractional.stall_limit(10) == 1); // floor(0.5) bumped to 1
  CHECK(fractional.stall_limit(0) == 1);
  TwoWayFMConfig stepped;
  stepped.use_step_limit = true;
  stepped.stall_steps = 15;
  CHECK(stepped.stall_limit(100000) == 15);
}

TEST_CASE("already optimal balanced pair commits nothing") {
  const Graph path =
      Graph::from_edges(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}});
  Partition partition(path, 2, 0.5, {0, 0, 0, 1, 1, 1});
  const Weight before = edge_cut(partition);
  REQUIRE(before == 1);
  Rng rng(4);
  const RefinementResult result = two_way_fm(partition, 0, 1, {}, rng);
  CHECK_FALSE(result.changed);
  CHECK(result.cut_delta == 0);
  CHECK(edge_cut(partition) == 1);
  CHECK(partition.assignment() == std::vector<BlockID>{0, 0, 0, 1, 1, 1});
}

TEST_CASE("equal-cut balance improvement is committed") {
  // {0,1,2,3}|{4,5} and {0,1,2}|{3,4,5} both cut one edge, but the second is
  // perfectly balanced; the refinement must take it. The ceiling (4.3) keeps
  // 4/2 legal while blocking anything 5/1 or worse.
  const Graph path =
      Graph::from_edges(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}});
  Partition partition(path, 2, 0.1, {0, 0, 0, 0, 1, 1});
  REQUIRE(edge_cut(partition) == 1);
  Rng rng(12);
  const RefinementResult result = two_way_fm(partition, 0, 1, {}, rng);
  CHECK(result.changed);
  CHECK(result.cut_delta == 0);
  CHECK(edge_cut(partition) == 1);
  CHECK(partition.block_weight(0) == 3);
  CHECK(partition.block_weight(1) == 3);
  CHECK(partition.block_of(3) == 1);
}

TEST_CASE("blocks without a shared boundary are a no-op") {
  // Blocks 0 and 2 never touch: 0-1 and 2-3 are separate components.
  const Graph graph = Graph::from_edges(4, {{0, 1}, {2, 3}});
  Partition partition(graph, 3, 3.0, {0, 0, 2, 2});
  Rng rng(1);
  const RefinementResult result = two_way_fm(partition, 0, 2, {}, rng);
  CHECK_FALSE(result.changed);
  CHECK(result.cut_delta == 0);
  CHECK(partition.assignment() == std::vector<BlockID>{0, 0, 2, 2});
}

TEST_CASE("identical blocks are rejected") {
  const Graph graph = Graph::from_edges(2, {{0, 1}});
  Partition partition(graph, 2, 1.0, {0, 1});
  Rng rng(0);
  CHECK_THROWS_AS(two_way_fm(partition, 1, 1, {}, rng), InvalidArgumentError);
  CHECK_THROWS_AS(two_way_fm(partition, 0, 2, {}, rng), InvalidArgumentError);
}

TEST_CASE("cut never increases and feasibility survives on random instances") {
  Rng master(8675309);
  int improved = 0;
  for (int instance = 0; instance < 100; ++instance) {
    Rng rng(master.next_u64());
    const NodeID n = 10 + static_cast<NodeID>(rng.next_index(40));
    const Graph graph = oracle::random_graph(n, n, 6, 3, rng);
    Partition partition = random_feasible_partition(graph, 2, rng);
    const Weight before = edge_cut(partition);
    const bool was_feasible = partition.feasible();
    REQUIRE(was_feasible);

    const RefinementResult result = two_way_fm(partition, 0, 1, {}, rng);
    const Weight after = edge_cut(partition);
    CHECK(after <= before);
    CHECK(result.cut_delta <= 0);
    CHECK(after == before + result.cut_delta);
    CHECK(partition.feasible());
    if (after < before) {
      ++improved;
    }
  }
  CHECK(improved > 50); // random splits leave plenty to fix
}

TEST_CASE("overloaded input is repaired toward the caps") {
  // 7/1 split of an 8-path against a ceiling of 5.12: moves into the light
  // block keep the cut at one edge while draining the overshoot until the
  // partition is feasible again.
  const Graph path = Graph::from_edges(
      8, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}});
  Partition partition(path, 2, 0.03, {0, 0, 0, 0, 0, 0, 0, 1});
  REQUIRE_FALSE(partition.feasible());
  const double initial_excess =
      static_cast<double>(partition.max_block_weight()) - partition.l_max();
  Rng rng(56);
  const RefinementResult result = two_way_fm(partition, 0, 1, {}, rng);
  CHECK(result.changed);
  CHECK(partition.feasible());
  const double final_excess =
      std::max(static_cast<double>(partition.block_weight(0)) - partition.l_max(),
               static_cast<double>(partition.block_weight(1)) - partition.l_max());
  CHECK(final_excess < initial_excess);
  CHECK(edge_cut(partition) == 1);
}

TEST_CASE("asymmetric caps are respected when the input satisfies them") {
  // Path of 8 unit nodes; block 0 capped at 3, block 1 at 6.
  const Graph path = Graph::from_edges(
      8, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}});
  Partition partition(path, 2, 2.0, {0, 0, 0, 1, 1, 1, 1, 1});
  Rng rng(77);
  two_way_fm(partition, 0, 1, {}, rng, 3.0, 6.0);
  CHECK(static_cast<double>(partition.block_weight(0)) <= 3.0);
  CHECK(static_cast<double>(partition.block_weight(1)) <= 6.0);
  CHECK(edge_cut(partition) <= 1);
}

TEST_CASE("same seed reproduces the same refinement") {
  Rng graph_rng(321);
  const Graph graph = oracle::random_graph(30, 45, 5, 2, graph_rng);
  const auto run = [&](uint64_t seed) {
    Rng rng(seed);
    Partition partition(graph, 2, 0.5,
                        [&] {
                          std::vector<BlockID> a(graph.n());
                          for (NodeID v = 0; v < graph.n(); ++v) {
                            a[v] = v % 2;
                          }
                          return a;
                        }());
    two_way_fm(partition, 0, 1, {}, rng);
    return partition.assignment();
  };
  CHECK(run(9) == run(9));
}
