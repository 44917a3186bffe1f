#pragma once

#include <cmath>
#include <cstddef>

#include "kwaymlp/types.hpp"

namespace kwaymlp {

/// Snapshot of the adaptive stopping statistics: p steps since the last
/// improvement with running mean mu and variance sigma2 of their gains.
struct StoppingRuleState {
  std::size_t p = 0;
  double mu = 0.0;
  double sigma2 = 0.0;
  double alpha = 10.0;
  double beta = 0.0; // ln(n) of the current level
};

/// Search is unlikely to recover once p * mu^2 > alpha * sigma2 + beta.
inline bool stopping_rule_check(const StoppingRuleState &s) {
  return static_cast<double>(s.p) * s.mu * s.mu > s.alpha * s.sigma2 + s.beta;
}

/// Streaming tracker for the adaptive rule. Gains are recorded per step via
/// Welford updates; reset whenever a strictly better cut is found.
class AdaptiveStopRule {
public:
  AdaptiveStopRule(double alpha, double beta) : _alpha(alpha), _beta(beta) {}

  void record(double gain) {
    ++_p;
    const double delta = gain - _mean;
    _mean += delta / static_cast<double>(_p);
    _m2 += delta * (gain - _mean);
  }

  void reset() {
    _p = 0;
    _mean = 0.0;
    _m2 = 0.0;
  }

  [[nodiscard]] StoppingRuleState state() const {
    const double sigma2 = _p > 1 ? _m2 / static_cast<double>(_p - 1) : 0.0;
    return {_p, _mean, sigma2, _alpha, _beta};
  }

  [[nodiscard]] bool should_stop() const { return _p >= 1 && stopping_rule_check(state()); }

private:
  double _alpha;
  double _beta;
  std::size_t _p = 0;
  double _mean = 0.0;
  double _m2 = 0.0;
};

/// Plain cutoff: stop after `limit` steps without improvement.
class SimpleStopRule {
public:
  explicit SimpleStopRule(std::size_t limit) : _limit(limit) {}
  void record(double) { ++_p; }
  void reset() { _p = 0; }
  [[nodiscard]] bool should_stop() const { return _p >= _limit; }

private:
  std::size_t _limit;
  std::size_t _p = 0;
};

/// Either rule behind one interface, selected by preset.
class StopPolicy {
public:
  static StopPolicy adaptive(double alpha, double beta) {
    StopPolicy p;
    p._use_adaptive = true;
    p._adaptive = AdaptiveStopRule(alpha, beta);
    return p;
  }
  static StopPolicy simple(std::size_t limit) {
    StopPolicy p;
    p._use_adaptive = false;
    p._simple = SimpleStopRule(limit);
    return p;
  }

  void record(double gain) {
    if (_use_adaptive) {
      _adaptive.record(gain);
    } else {
      _simple.record(gain);
    }
  }
  void reset() {
    if (_use_adaptive) {
      _adaptive.reset();
    } else {
      _simple.reset();
    }
  }
  [[nodiscard]] bool should_stop() const {
    return _use_adaptive ? _adaptive.should_stop() : _simple.should_stop();
  }

private:
  StopPolicy() = default;
  bool _use_adaptive = true;
  AdaptiveStopRule _adaptive{10.0, 0.0};
  SimpleStopRule _simple{15};
};

/// ln(n), the base term of the adaptive rule, floored at 0 for tiny graphs.
inline double stop_rule_beta(NodeID level_node_count) {
  return std::log(std::max<double>(1.0, static_cast<double>(level_node_count)));
}

} // namespace kwaymlp
