// Command-line front end: reads a METIS graph, computes a balanced k-way
// partition, optionally writes the block assignment, and prints a one-line
// summary.

#include <chrono>
#include <cstdint>
#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "kwaymlp/config.hpp"
#include "kwaymlp/cycles.hpp"
#include "kwaymlp/metis_io.hpp"
#include "kwaymlp/partition.hpp"

int main(int argc, char **argv) {
  CLI::App app{"Multilevel k-way graph partitioner"};

  std::string graph_path;
  unsigned k = 2;
  double imbalance = 0.03;
  std::string preset_name = "eco";
  std::uint64_t seed = 0;
  std::optional<unsigned> cycles;
  std::optional<std::string> input_partition_path;
  std::optional<std::string> output_path;

  app.add_option("--graph", graph_path, "Input graph in METIS format")->required();
  app.add_option("--k", k, "Number of blocks")->required();
  app.add_option("--imbalance", imbalance, "Allowed imbalance epsilon (default 0.03)");
  app.add_option("--preset", preset_name, "Configuration preset: strong|eco|fast");
  app.add_option("--seed", seed, "Random seed");
  app.add_option("--cycles", cycles, "Override the number of search cycles");
  app.add_option("--input-partition", input_partition_path,
                 "Existing partition to improve instead of starting fresh");
  app.add_option("--output", output_path, "Write the partition, one block id per line");

  CLI11_PARSE(app, argc, argv);

  try {
    const kwaymlp::Graph graph = kwaymlp::read_metis_file(graph_path);
    kwaymlp::AlgorithmConfig config = kwaymlp::build_config(
        kwaymlp::preset_from_string(preset_name), static_cast<kwaymlp::BlockID>(k), imbalance,
        seed);
    if (cycles.has_value()) {
      config.cycle_repetitions = *cycles;
    }

    std::optional<kwaymlp::Partition> input;
    if (input_partition_path.has_value()) {
      const std::vector<kwaymlp::BlockID> assignment =
          kwaymlp::read_partition_file(*input_partition_path, graph.n(), config.k);
      input.emplace(graph, config.k, config.epsilon, assignment);
    }

    kwaymlp::Rng rng(config.seed);
    const auto start = std::chrono::steady_clock::now();
    const kwaymlp::Partition partition = kwaymlp::partition_graph(
        graph, config, rng, input.has_value() ? &*input : nullptr);
    const auto stop = std::chrono::steady_clock::now();

    if (!partition.feasible()) {
      throw kwaymlp::InfeasibleError("result exceeds the block weight ceiling");
    }
    if (output_path.has_value()) {
      kwaymlp::write_partition_file(*output_path, partition);
    }

    std::cout << "cut=" << kwaymlp::edge_cut(partition)
              << " balance=" << kwaymlp::partition_balance(partition)
              << " time_s=" << std::chrono::duration<double>(stop - start).count() << '\n';
    return 0;
  } catch (const std::exception &error) {
    std::cerr << "error: " << error.what() << '\n';
    return 1;
  }
}
