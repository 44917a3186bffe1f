#pragma once

#include <cmath>
#include <cstdint>
#include <sstream>
#include <string>

#include "kwaymlp/coarsening.hpp"
#include "kwaymlp/kway_fm.hpp"
#include "kwaymlp/rating.hpp"
#include "kwaymlp/scheduling.hpp"
#include "kwaymlp/types.hpp"

namespace kwaymlp {

enum class Preset { kStrong, kEco, kFast };

inline const char *to_string(Preset preset) {
  switch (preset) {
  case Preset::kStrong:
    return "strong";
  case Preset::kEco:
    return "eco";
  case Preset::kFast:
    return "fast";
  }
  return "?";
}

inline Preset preset_from_string(const std::string &name) {
  if (name == "strong") {
    return Preset::kStrong;
  }
  if (name == "eco") {
    return Preset::kEco;
  }
  if (name == "fast") {
    return Preset::kFast;
  }
  throw ConfigError("unknown preset: " + name);
}

enum class CycleType { kV, kW, kF };

inline const char *to_string(CycleType type) {
  switch (type) {
  case CycleType::kV:
    return "V";
  case CycleType::kW:
    return "W";
  case CycleType::kF:
    return "F";
  }
  return "?";
}

inline CycleType cycle_type_from_string(const std::string &name) {
  if (name == "V") {
    return CycleType::kV;
  }
  if (name == "W") {
    return CycleType::kW;
  }
  if (name == "F") {
    return CycleType::kF;
  }
  throw ConfigError("unknown cycle type: " + name);
}

struct AlgorithmConfig {
  Preset preset = Preset::kStrong;
  BlockID k = 2;
  double epsilon = 0.03;
  std::uint64_t seed = 0;
  CoarseningConfig coarsening;
  std::size_t initial_attempts = 1;
  bool kway_enabled = true; // k-way FM before the pairwise schedule
  KWayFMConfig kway;
  ScheduleConfig schedule;
  CycleType cycle_type = CycleType::kV;
  std::size_t cycle_d = 2;
  std::size_t cycle_repetitions = 1;
};

namespace detail {

/// Tuning counts derived from formulas are floored, never below 1.
inline std::size_t formula_count(double value) {
  return static_cast<std::size_t>((std::max)(1.0, std::floor(value)));
}

} // namespace detail

inline AlgorithmConfig build_config(Preset preset, BlockID k, double epsilon,
                                    std::uint64_t seed) {
  if (k < 2) {
    throw ConfigError("k must be at least 2");
  }
  if (epsilon <= 0.0) {
    throw ConfigError("perfectly balanced partitioning (epsilon <= 0) is not supported");
  }

  AlgorithmConfig config;
  config.preset = preset;
  config.k = k;
  config.epsilon = epsilon;
  config.seed = seed;
  config.coarsening.k = k;
  const double log2k = std::log2(static_cast<double>(k));

  switch (preset) {
  case Preset::kStrong:
    config.coarsening.random_matching_levels = 0;
    config.coarsening.finest_rating = EdgeRating::kInnerOuter;
    config.coarsening.coarse_rating = EdgeRating::kExpansion2;
    config.initial_attempts = detail::formula_count(100.0 / log2k);
    config.kway_enabled = true;
    config.kway.max_rounds = 10;
    config.kway.break_on_no_improvement = true;
    config.kway.adaptive_stopping = true;
    config.kway.alpha = 10.0;
    config.schedule.scheduler = Scheduler::kActiveBlock;
    config.schedule.two_way.stall_fraction = 0.05;
    config.schedule.two_way.use_step_limit = false;
    config.schedule.flow_enabled = true;
    config.schedule.flow.alpha_prime = 8.0;
    config.schedule.flow.most_balanced = true;
    config.schedule.multi_try_enabled = true;
    config.schedule.multi_try.adaptive_stopping = true;
    config.schedule.multi_try.alpha = 10.0;
    config.cycle_type = CycleType::kF;
    config.cycle_repetitions = 2;
    break;
  case Preset::kEco:
    config.coarsening.random_matching_levels =
        detail::formula_count((std::max)(2.0, 7.0 - log2k));
    config.coarsening.finest_rating = EdgeRating::kExpansion2;
    config.coarsening.coarse_rating = EdgeRating::kExpansion2;
    config.initial_attempts = detail::formula_count((std::min)(10.0, 40.0 / log2k));
    config.kway_enabled = true;
    config.kway.max_rounds = detail::formula_count((std::min)(5.0, log2k));
    config.kway.break_on_no_improvement = true;
    config.kway.adaptive_stopping = true;
    config.kway.alpha = 10.0;
    config.schedule.scheduler = Scheduler::kActiveBlock;
    config.schedule.two_way.stall_fraction = 0.01;
    config.schedule.two_way.use_step_limit = false;
    config.schedule.flow_enabled = true;
    config.schedule.flow.alpha_prime = 2.0;
    config.schedule.flow.most_balanced = true;
    config.schedule.multi_try_enabled = true;
    config.schedule.multi_try.adaptive_stopping = true;
    config.schedule.multi_try.alpha = 10.0;
    config.cycle_type = CycleType::kV;
    config.cycle_repetitions = 1;
    break;
  case Preset::kFast:
    config.coarsening.random_matching_levels = 4;
    config.coarsening.finest_rating = EdgeRating::kExpansion2;
    config.coarsening.coarse_rating = EdgeRating::kExpansion2;
    config.initial_attempts = 1;
    config.schedule.two_way.use_step_limit = true;
    config.schedule.two_way.stall_steps = 15;
    config.schedule.flow_enabled = false;
    config.schedule.multi_try_enabled = false;
    if (k <= 8) {
      config.kway_enabled = false;
      config.schedule.scheduler = Scheduler::kQuotientRandom;
      config.schedule.quotient_max_passes = 1;
    } else {
      config.kway_enabled = true;
      config.kway.max_rounds = 1;
      config.kway.break_on_no_improvement = true;
      config.kway.adaptive_stopping = false;
      config.kway.simple_step_limit = 15;
      config.schedule.scheduler = Scheduler::kKWayOnly;
    }
    config.cycle_type = CycleType::kV;
    config.cycle_repetitions = 1;
    break;
  }
  return config;
}

/// Plain key=value form, one key per line, parse_config-compatible.
inline std::string serialize_config(const AlgorithmConfig &config) {
  std::ostringstream out;
  out << "preset=" << to_string(config.preset) << '\n';
  out << "k=" << config.k << '\n';
  out << "epsilon=" << config.epsilon << '\n';
  out << "seed=" << config.seed << '\n';
  out << "random_matching_levels=" << config.coarsening.random_matching_levels << '\n';
  out << "finest_rating=" << to_string(config.coarsening.finest_rating) << '\n';
  out << "coarse_rating=" << to_string(config.coarsening.coarse_rating) << '\n';
  out << "initial_attempts=" << config.initial_attempts << '\n';
  out << "kway_enabled=" << (config.kway_enabled ? 1 : 0) << '\n';
  out << "kway_rounds=" << config.kway.max_rounds << '\n';
  out << "kway_stop_on_flat_round=" << (config.kway.break_on_no_improvement ? 1 : 0) << '\n';
  out << "kway_adaptive=" << (config.kway.adaptive_stopping ? 1 : 0) << '\n';
  out << "kway_alpha=" << config.kway.alpha << '\n';
  out << "kway_step_limit=" << config.kway.simple_step_limit << '\n';
  out << "scheduler=" << to_string(config.schedule.scheduler) << '\n';
  out << "quotient_max_passes=" << config.schedule.quotient_max_passes << '\n';
  out << "stall_fraction=" << config.schedule.two_way.stall_fraction << '\n';
  out << "stall_steps=" << config.schedule.two_way.stall_steps << '\n';
  out << "use_step_limit=" << (config.schedule.two_way.use_step_limit ? 1 : 0) << '\n';
  out << "flow_enabled=" << (config.schedule.flow_enabled ? 1 : 0) << '\n';
  out << "flow_alpha_prime=" << config.schedule.flow.alpha_prime << '\n';
  out << "flow_max_iterations=" << config.schedule.flow.max_iterations << '\n';
  out << "most_balanced=" << (config.schedule.flow.most_balanced ? 1 : 0) << '\n';
  out << "toposort_repetitions=" << config.schedule.flow.toposort_repetitions << '\n';
  out << "flow_accept_equal_cut_balance="
      << (config.schedule.flow.accept_equal_cut_better_balance ? 1 : 0) << '\n';
  out << "multi_try_enabled=" << (config.schedule.multi_try_enabled ? 1 : 0) << '\n';
  out << "multi_try_adaptive=" << (config.schedule.multi_try.adaptive_stopping ? 1 : 0) << '\n';
  out << "multi_try_alpha=" << config.schedule.multi_try.alpha << '\n';
  out << "multi_try_step_limit=" << config.schedule.multi_try.simple_step_limit << '\n';
  out << "cycle_type=" << to_string(config.cycle_type) << '\n';
  out << "cycle_d=" << config.cycle_d << '\n';
  out << "cycle_repetitions=" << config.cycle_repetitions << '\n';
  return out.str();
}

namespace detail {

inline bool parse_flag(const std::string &key, const std::string &value) {
  if (value == "1" || value == "true") {
    return true;
  }
  if (value == "0" || value == "false") {
    return false;
  }
  throw ConfigError("expected 0/1 for " + key + ", got: " + value);
}

template <typename T> T parse_number(const std::string &key, const std::string &value) {
  std::istringstream in(value);
  T parsed{};
  in >> parsed;
  if (in.fail() || !(in >> std::ws).eof()) {
    throw ConfigError("bad numeric value for " + key + ": " + value);
  }
  return parsed;
}

inline void apply_config_entry(AlgorithmConfig &config, const std::string &key,
                               const std::string &value) {
  if (key == "preset") {
    config.preset = preset_from_string(value);
  } else if (key == "k") {
    config.k = parse_number<BlockID>(key, value);
    config.coarsening.k = config.k;
  } else if (key == "epsilon") {
    config.epsilon = parse_number<double>(key, value);
  } else if (key == "seed") {
    config.seed = parse_number<std::uint64_t>(key, value);
  } else if (key == "random_matching_levels") {
    config.coarsening.random_matching_levels = parse_number<std::size_t>(key, value);
  } else if (key == "finest_rating") {
    config.coarsening.finest_rating = edge_rating_from_string(value);
  } else if (key == "coarse_rating") {
    config.coarsening.coarse_rating = edge_rating_from_string(value);
  } else if (key == "initial_attempts") {
    config.initial_attempts = parse_number<std::size_t>(key, value);
  } else if (key == "kway_enabled") {
    config.kway_enabled = parse_flag(key, value);
  } else if (key == "kway_rounds") {
    config.kway.max_rounds = parse_number<std::size_t>(key, value);
  } else if (key == "kway_stop_on_flat_round") {
    config.kway.break_on_no_improvement = parse_flag(key, value);
  } else if (key == "kway_adaptive") {
    config.kway.adaptive_stopping = parse_flag(key, value);
  } else if (key == "kway_alpha") {
    config.kway.alpha = parse_number<double>(key, value);
  } else if (key == "kway_step_limit") {
    config.kway.simple_step_limit = parse_number<std::size_t>(key, value);
  } else if (key == "scheduler") {
    config.schedule.scheduler = scheduler_from_string(value);
  } else if (key == "quotient_max_passes") {
    config.schedule.quotient_max_passes = parse_number<std::size_t>(key, value);
  } else if (key == "stall_fraction") {
    config.schedule.two_way.stall_fraction = parse_number<double>(key, value);
  } else if (key == "stall_steps") {
    config.schedule.two_way.stall_steps = parse_number<std::size_t>(key, value);
  } else if (key == "use_step_limit") {
    config.schedule.two_way.use_step_limit = parse_flag(key, value);
  } else if (key == "flow_enabled") {
    config.schedule.flow_enabled = parse_flag(key, value);
  } else if (key == "flow_alpha_prime") {
    config.schedule.flow.alpha_prime = parse_number<double>(key, value);
  } else if (key == "flow_max_iterations") {
    config.schedule.flow.max_iterations = parse_number<std::size_t>(key, value);
  } else if (key == "most_balanced") {
    config.schedule.flow.most_balanced = parse_flag(key, value);
  } else if (key == "toposort_repetitions") {
    config.schedule.flow.toposort_repetitions = parse_number<std::size_t>(key, value);
  } else if (key == "flow_accept_equal_cut_balance") {
    config.schedule.flow.accept_equal_cut_better_balance = parse_flag(key, value);
  } else if (key == "multi_try_enabled") {
    config.schedule.multi_try_enabled = parse_flag(key, value);
  } else if (key == "multi_try_adaptive") {
    config.schedule.multi_try.adaptive_stopping = parse_flag(key, value);
  } else if (key == "multi_try_alpha") {
    config.schedule.multi_try.alpha = parse_number<double>(key, value);
  } else if (key == "multi_try_step_limit") {
    config.schedule.multi_try.simple_step_limit = parse_number<std::size_t>(key, value);
  } else if (key == "cycle_type") {
    config.cycle_type = cycle_type_from_string(value);
  } else if (key == "cycle_d") {
    config.cycle_d = parse_number<std::size_t>(key, value);
  } else if (key == "cycle_repetitions") {
    config.cycle_repetitions = parse_number<std::size_t>(key, value);
  } else {
    throw ConfigError("unknown config key: " + key);
  }
}

} // namespace detail

/// Applies key=value lines ('#' comments, blank lines ignored) on top of a
/// base config. Unknown keys are errors.
inline AlgorithmConfig parse_config(const std::string &text, AlgorithmConfig base) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    const std::size_t comment = line.find('#');
    if (comment != std::string::npos) {
      line.erase(comment);
    }
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) {
      continue;
    }
    const auto last = line.find_last_not_of(" \t\r");
    line = line.substr(first, last - first + 1);
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(line_number) + " has no '='");
    }
    detail::apply_config_entry(base, line.substr(0, eq), line.substr(eq + 1));
  }
  return base;
}

} // namespace kwaymlp
