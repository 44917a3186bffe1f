// Highest-label push-relabel max flow with gap heuristic, residual min-cut
// extraction, and the xor-paired arc network container.
#include <catch2/catch_amalgamated.hpp>

#include <cstddef>
#include <vector>

#include "kwaymlp/flow_network.hpp"
#include "kwaymlp/max_flow.hpp"
#include "kwaymlp/types.hpp"
#include "support/oracles.hpp"

using namespace kwaymlp;

namespace {

FlowNetwork from_matrix(const oracle::CapacityMatrix &capacity) {
  FlowNetwork net(capacity.size());
  for (std::size_t u = 0; u < capacity.size(); ++u) {
    for (std::size_t v = 0; v < capacity.size(); ++v) {
      if (capacity[u][v] > 0) {
        net.add_arc(u, v, capacity[u][v]);
      }
    }
  }
  return net;
}

/// Net outflow of v under the committed flow (value at s, -value at t, else 0).
Weight net_outflow(const FlowNetwork &net, std::size_t v) {
  Weight out = 0;
  for (std::size_t arc : net.arcs_of(v)) {
    out += net.flow(arc);
  }
  return out;
}

} // namespace

TEST_CASE("network container pairs arcs by xor and tracks residuals") {
  FlowNetwork net(3);
  net.add_arc(0, 1, 5);
  net.add_arc(1, 2, 3, 2);
  CHECK(net.node_count() == 3);
  CHECK(net.arc_count() == 4);
  const std::size_t forward = net.arcs_of(0)[0];
  const std::size_t backward = FlowNetwork::reverse_arc(forward);
  CHECK(net.arc_target(forward) == 1);
  CHECK(net.arc_target(backward) == 0);
  CHECK(net.residual(forward) == 5);
  CHECK(net.residual(backward) == 0);
  net.push(forward, 4);
  CHECK(net.residual(forward) == 1);
  CHECK(net.residual(backward) == 4);
  CHECK(net.flow(forward) == 4);
  CHECK(net.flow(backward) == -4);
  CHECK(net.original_capacity(forward) == 5);
  net.reset_flow();
  CHECK(net.residual(forward) == 5);
  CHECK(net.flow(forward) == 0);
  // The second add_arc kept its explicit reverse capacity.
  const std::size_t middle = net.arcs_of(1)[1];
  CHECK(net.arc_target(middle) == 2);
  CHECK(net.residual(FlowNetwork::reverse_arc(middle)) == 2);
}

TEST_CASE("series bottleneck carries the smaller capacity") {
  FlowNetwork net(3); // s=0, a=1, t=2
  net.add_arc(0, 1, 3);
  net.add_arc(1, 2, 2);
  CHECK(max_flow(net, 0, 2) == 2);
  const std::vector<std::size_t> side = extract_min_cut(net, 0);
  // Smallest source set: everything reachable in the residual.
  REQUIRE(!side.empty());
  CHECK(side.front() == 0);
  std::vector<char> mask(3, 0);
  for (std::size_t v : side) {
    mask[v] = 1;
  }
  CHECK(mask[2] == 0);
  CHECK(cut_capacity(net, mask) == 2);
}

TEST_CASE("parallel disjoint paths add their capacities") {
  FlowNetwork net(4); // s=0, a=1, b=2, t=3
  net.add_arc(0, 1, 1);
  net.add_arc(1, 3, 1);
  net.add_arc(0, 2, 4);
  net.add_arc(2, 3, 4);
  CHECK(max_flow(net, 0, 3) == 5);
}

TEST_CASE("zero-capacity network has an empty cut at the source") {
  FlowNetwork net(4);
  net.add_arc(0, 1, 0);
  net.add_arc(1, 3, 0);
  CHECK(max_flow(net, 0, 3) == 0);
  const std::vector<std::size_t> side = extract_min_cut(net, 0);
  CHECK(side == std::vector<std::size_t>{0});
}

TEST_CASE("source equal to sink is rejected") {
  FlowNetwork net(2);
  net.add_arc(0, 1, 1);
  CHECK_THROWS_AS(max_flow(net, 1, 1), InvalidArgumentError);
}

TEST_CASE("flow value matches exhaustive min-cut enumeration") {
  Rng master(20240601);
  for (int instance = 0; instance < 60; ++instance) {
    Rng rng(master.next_u64());
    const std::size_t n = 4 + rng.next_index(9); // up to 12 nodes
    const std::size_t arcs = 2 * n + rng.next_index(3 * n);
    const oracle::CapacityMatrix capacity =
        oracle::random_network(n, arcs, 9, rng);
    const std::size_t s = 0;
    const std::size_t t = n - 1;
    const Weight expected = oracle::max_flow_value(capacity, s, t);
    FlowNetwork net = from_matrix(capacity);
    const Weight value = max_flow(net, s, t);
    REQUIRE(value == expected);

    // Conservation: zero net outflow everywhere except the terminals.
    for (std::size_t v = 0; v < n; ++v) {
      if (v == s) {
        CHECK(net_outflow(net, v) == value);
      } else if (v == t) {
        CHECK(net_outflow(net, v) == -value);
      } else {
        CHECK(net_outflow(net, v) == 0);
      }
    }

    // Residual reachability gives a cut of exactly the flow value.
    const std::vector<std::size_t> side = extract_min_cut(net, s);
    std::vector<char> mask(n, 0);
    bool contains_t = false;
    for (std::size_t v : side) {
      mask[v] = 1;
      contains_t |= (v == t);
    }
    CHECK(mask[s] == 1);
    CHECK_FALSE(contains_t);
    CHECK(cut_capacity(net, mask) == value);

    // Rerunning after a reset reproduces the same value.
    net.reset_flow();
    CHECK(max_flow(net, s, t) == expected);
  }
}

TEST_CASE("forward and reverse runs agree on symmetric capacities") {
  Rng master(7);
  for (int instance = 0; instance < 20; ++instance) {
    Rng rng(master.next_u64());
    const std::size_t n = 4 + rng.next_index(6);
    oracle::CapacityMatrix capacity = oracle::random_network(n, 3 * n, 6, rng);
    for (std::size_t u = 0; u < n; ++u) {
      for (std::size_t v = u + 1; v < n; ++v) {
        capacity[u][v] = capacity[v][u] =
            std::max(capacity[u][v], capacity[v][u]);
      }
    }
    FlowNetwork forward = from_matrix(capacity);
    FlowNetwork backward = from_matrix(capacity);
    CHECK(max_flow(forward, 0, n - 1) == max_flow(backward, n - 1, 0));
  }
}

TEST_CASE("disconnected sink yields zero flow") {
  FlowNetwork net(5);
  net.add_arc(0, 1, 7);
  net.add_arc(1, 2, 7); // nodes 3, 4 unreachable; t = 4
  CHECK(max_flow(net, 0, 4) == 0);
  CHECK(extract_min_cut(net, 0) == std::vector<std::size_t>{0, 1, 2});
}
