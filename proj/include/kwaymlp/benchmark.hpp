#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "kwaymlp/config.hpp"
#include "kwaymlp/cycles.hpp"
#include "kwaymlp/graph.hpp"
#include "kwaymlp/partition.hpp"
#include "kwaymlp/types.hpp"

namespace kwaymlp {

struct BenchInstance {
  std::string name;
  Graph graph;
};

/// Configuration plus the label used in report rows; two entries may share a
/// preset but differ in feature flags, so the label is free-form.
struct NamedConfig {
  std::string name;
  AlgorithmConfig config;
};

struct RunOutcome {
  Weight cut = 0;
  double balance = 0.0;
  double time_s = 0.0;
};

/// One executed run; serialized as a CSV row.
struct BenchRun {
  std::string graph;
  BlockID k = 0;
  std::string config_name;
  std::uint64_t seed = 0;
  int rep = 0;
  Weight cut = 0;
  double balance = 0.0;
  double time_s = 0.0;
};

/// Per-(graph, config) summary over repetitions.
struct InstanceScore {
  std::string graph;
  BlockID k = 0;
  std::string config_name;
  double avg_cut = 0.0;
  Weight best_cut = 0;
  double avg_balance = 0.0;
  double avg_time_s = 0.0;
};

/// Per-config aggregate: geometric means over the instance scores.
struct ConfigAggregate {
  std::string config_name;
  double geomean_avg_cut = 0.0;
  double geomean_best_cut = 0.0;
  double geomean_avg_time_s = 0.0;
};

inline double geometric_mean(const std::vector<double> &values) {
  if (values.empty()) {
    return 0.0;
  }
  double log_sum = 0.0;
  for (double v : values) {
    if (v <= 0.0) {
      return 0.0; // a zero factor makes the whole product zero
    }
    log_sum += std::log(v);
  }
  return std::exp(log_sum / static_cast<double>(values.size()));
}

struct BenchmarkReport {
  std::vector<BenchRun> runs;
  std::vector<InstanceScore> instances;
  std::vector<ConfigAggregate> aggregates;

  [[nodiscard]] std::string csv() const {
    std::ostringstream out;
    out << "graph,k,preset,seed,rep,cut,balance,time_s\n";
    for (const BenchRun &run : runs) {
      out << run.graph << ',' << run.k << ',' << run.config_name << ',' << run.seed << ','
          << run.rep << ',' << run.cut << ',' << run.balance << ',' << run.time_s << '\n';
    }
    return out.str();
  }
};

/// Executes one partitioning run; injectable so tests can fake durations.
using BenchRunner =
    std::function<RunOutcome(const BenchInstance &, const AlgorithmConfig &, std::uint64_t seed)>;

inline BenchRunner default_runner() {
  return [](const BenchInstance &instance, const AlgorithmConfig &config, std::uint64_t seed) {
    AlgorithmConfig seeded = config;
    seeded.seed = seed;
    Rng rng(seed);
    const auto start = std::chrono::steady_clock::now();
    Partition partition = partition_graph(instance.graph, seeded, rng);
    const auto stop = std::chrono::steady_clock::now();
    RunOutcome outcome;
    outcome.cut = edge_cut(partition);
    outcome.balance = partition_balance(partition);
    outcome.time_s = std::chrono::duration<double>(stop - start).count();
    return outcome;
  };
}

/// Parallelism cap for the harness: KWAY_MLP_THREADS if set (minimum 1),
/// otherwise 1 so runs stay sequential unless explicitly requested.
inline unsigned harness_thread_cap() {
  const char *env = std::getenv("KWAY_MLP_THREADS");
  if (env == nullptr || *env == '\0') {
    return 1;
  }
  const long value = std::strtol(env, nullptr, 10);
  return value <= 1 ? 1u : static_cast<unsigned>(value);
}

namespace detail {

/// Runs job(i) for i in [0, count) on up to harness_thread_cap() threads.
/// Jobs must be independent; results go into pre-sized slots.
inline void parallel_cells(std::size_t count, const std::function<void(std::size_t)> &job) {
  const unsigned threads = std::min<std::size_t>(harness_thread_cap(), count);
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) {
      job(i);
    }
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&, t]() {
      for (std::size_t i = t; i < count; i += threads) {
        job(i);
      }
    });
  }
  for (std::thread &worker : pool) {
    worker.join();
  }
}

inline InstanceScore score_runs(const std::string &graph, BlockID k, const std::string &config,
                                const std::vector<BenchRun> &runs) {
  InstanceScore score;
  score.graph = graph;
  score.k = k;
  score.config_name = config;
  score.best_cut = runs.front().cut;
  for (const BenchRun &run : runs) {
    score.avg_cut += static_cast<double>(run.cut);
    score.avg_balance += run.balance;
    score.avg_time_s += run.time_s;
    score.best_cut = std::min(score.best_cut, run.cut);
  }
  const auto count = static_cast<double>(runs.size());
  score.avg_cut /= count;
  score.avg_balance /= count;
  score.avg_time_s /= count;
  return score;
}

inline ConfigAggregate aggregate_scores(const std::string &config,
                                        const std::vector<InstanceScore> &scores) {
  ConfigAggregate aggregate;
  aggregate.config_name = config;
  std::vector<double> avg_cuts;
  std::vector<double> best_cuts;
  std::vector<double> avg_times;
  for (const InstanceScore &score : scores) {
    if (score.config_name != config) {
      continue;
    }
    avg_cuts.push_back(score.avg_cut);
    best_cuts.push_back(static_cast<double>(score.best_cut));
    avg_times.push_back(score.avg_time_s);
  }
  aggregate.geomean_avg_cut = geometric_mean(avg_cuts);
  aggregate.geomean_best_cut = geometric_mean(best_cuts);
  aggregate.geomean_avg_time_s = geometric_mean(avg_times);
  return aggregate;
}

} // namespace detail

/// Repeats each (instance, config) cell `repetitions` times with seeds
/// config.seed, config.seed+1, ...; reports per-instance averages/bests and
/// per-config geometric means across instances.
inline BenchmarkReport run_normal_test(const std::vector<BenchInstance> &instances,
                                       const std::vector<NamedConfig> &configs, int repetitions,
                                       const BenchRunner &runner = default_runner()) {
  if (repetitions < 1) {
    throw InvalidArgumentError("repetitions must be at least 1");
  }
  if (instances.empty() || configs.empty()) {
    throw InvalidArgumentError("need at least one instance and one configuration");
  }
  struct Cell {
    std::size_t instance;
    std::size_t config;
    int rep;
  };
  std::vector<Cell> cells;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    for (std::size_t c = 0; c < configs.size(); ++c) {
      for (int rep = 0; rep < repetitions; ++rep) {
        cells.push_back({i, c, rep});
      }
    }
  }
  std::vector<BenchRun> runs(cells.size());
  detail::parallel_cells(cells.size(), [&](std::size_t idx) {
    const Cell &cell = cells[idx];
    const BenchInstance &instance = instances[cell.instance];
    const NamedConfig &config = configs[cell.config];
    const std::uint64_t seed = config.config.seed + static_cast<std::uint64_t>(cell.rep);
    const RunOutcome outcome = runner(instance, config.config, seed);
    runs[idx] = {instance.name, config.config.k, config.name,    seed,
                 cell.rep,      outcome.cut,     outcome.balance, outcome.time_s};
  });

  BenchmarkReport report;
  report.runs = std::move(runs);
  for (std::size_t i = 0; i < instances.size(); ++i) {
    for (std::size_t c = 0; c < configs.size(); ++c) {
      std::vector<BenchRun> cell_runs;
      for (const BenchRun &run : report.runs) {
        if (run.graph == instances[i].name && run.config_name == configs[c].name) {
          cell_runs.push_back(run);
        }
      }
      report.instances.push_back(detail::score_runs(instances[i].name, configs[c].config.k,
                                                    configs[c].name, cell_runs));
    }
  }
  for (const NamedConfig &config : configs) {
    report.aggregates.push_back(detail::aggregate_scores(config.name, report.instances));
  }
  return report;
}

inline BenchmarkReport run_normal_test(const std::vector<BenchInstance> &instances,
                                       const NamedConfig &config, int repetitions,
                                       const BenchRunner &runner = default_runner()) {
  return run_normal_test(instances, std::vector<NamedConfig>{config}, repetitions, runner);
}

struct EffectivenessConfig {
  int rounds = 5;
  double budget_factor = 3.0;
  // Backstop against zero-duration mock runs; real runs are budget-limited.
  int max_runs_per_round = 10000;
};

/// Time-budgeted comparison: per round every config runs once, the slowest of
/// those runs sets t, and each config then keeps sampling while its budget
/// 3t lasts — a run expected to take e with r budget left happens with
/// probability min(1, r/e), so the expected total spend is the full budget.
/// A round scores as the best cut seen; rounds are scored like normal reps.
inline BenchmarkReport run_effectiveness_test(const std::vector<BenchInstance> &instances,
                                              const std::vector<NamedConfig> &configs, Rng &rng,
                                              const EffectivenessConfig &protocol = {},
                                              const BenchRunner &runner = default_runner()) {
  if (configs.size() < 2) {
    throw InvalidArgumentError("effectiveness test needs at least 2 configurations");
  }
  if (instances.empty() || protocol.rounds < 1) {
    throw InvalidArgumentError("need at least one instance and one round");
  }
  BenchmarkReport report;
  std::vector<std::vector<std::vector<BenchRun>>> round_scores(
      instances.size(), std::vector<std::vector<BenchRun>>(configs.size()));

  for (std::size_t i = 0; i < instances.size(); ++i) {
    const BenchInstance &instance = instances[i];
    for (int round = 0; round < protocol.rounds; ++round) {
      // Mandatory first run of every config; the slowest sets the budget.
      std::vector<RunOutcome> first(configs.size());
      std::vector<std::uint64_t> first_seed(configs.size());
      double t = 0.0;
      for (std::size_t c = 0; c < configs.size(); ++c) {
        first_seed[c] = rng.next_u64();
        first[c] = runner(instance, configs[c].config, first_seed[c]);
        t = std::max(t, first[c].time_s);
      }
      for (std::size_t c = 0; c < configs.size(); ++c) {
        const NamedConfig &config = configs[c];
        Weight best = first[c].cut;
        double best_balance = first[c].balance;
        double spent = first[c].time_s;
        double mean_time = first[c].time_s;
        int runs_done = 1;
        report.runs.push_back({instance.name, config.config.k, config.name, first_seed[c],
                               round, first[c].cut, first[c].balance, first[c].time_s});
        const double budget = protocol.budget_factor * t;
        while (runs_done < protocol.max_runs_per_round) {
          const double remaining = budget - spent;
          const double expected = std::max(mean_time, 1e-12);
          const double probability = std::min(1.0, remaining / expected);
          if (!rng.next_with_probability(probability)) {
            break;
          }
          const std::uint64_t seed = rng.next_u64();
          const RunOutcome outcome = runner(instance, config.config, seed);
          spent += outcome.time_s;
          ++runs_done;
          mean_time += (outcome.time_s - mean_time) / runs_done;
          if (outcome.cut < best) {
            best = outcome.cut;
            best_balance = outcome.balance;
          }
          report.runs.push_back({instance.name, config.config.k, config.name, seed, round,
                                 outcome.cut, outcome.balance, outcome.time_s});
        }
        // One synthetic per-round record carrying best cut and total spend,
        // scored exactly like a normal-test repetition.
        round_scores[i][c].push_back({instance.name, config.config.k, config.name,
                                      first_seed[c], round, best, best_balance, spent});
      }
    }
  }

  for (std::size_t i = 0; i < instances.size(); ++i) {
    for (std::size_t c = 0; c < configs.size(); ++c) {
      report.instances.push_back(detail::score_runs(instances[i].name, configs[c].config.k,
                                                    configs[c].name, round_scores[i][c]));
    }
  }
  for (const NamedConfig &config : configs) {
    report.aggregates.push_back(detail::aggregate_scores(config.name, report.instances));
  }
  return report;
}

} // namespace kwaymlp
