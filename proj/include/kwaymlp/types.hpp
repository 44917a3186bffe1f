#pragma once

#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace kwaymlp {

using NodeID = std::uint32_t;
using EdgeID = std::uint32_t;
using BlockID = std::uint32_t;

// Node and edge weights are non-negative integers; contraction preserves
// integrality since it only ever adds weights.
using Weight = std::int64_t;
using Gain = std::int64_t;

inline constexpr NodeID kInvalidNode = std::numeric_limits<NodeID>::max();
inline constexpr BlockID kInvalidBlock = std::numeric_limits<BlockID>::max();

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class InvalidArgumentError : public Error {
public:
  using Error::Error;
};

class InfeasibleError : public Error {
public:
  using Error::Error;
};

class ConfigError : public Error {
public:
  using Error::Error;
};

class ParseError : public Error {
public:
  ParseError(std::size_t line, const std::string &what)
      : Error("line " + std::to_string(line) + ": " + what), _line(line) {}

  [[nodiscard]] std::size_t line() const { return _line; }

private:
  std::size_t _line;
};

/// Deterministic random source. Every algorithm draws from one of these so a
/// fixed seed reproduces a run bit for bit.
class Rng {
public:
  explicit Rng(std::uint64_t seed = 1) : _gen(seed) {}

  std::uint64_t next_u64() { return _gen(); }

  /// Uniform value in [0, bound). bound = 0 returns 0.
  std::uint64_t next_index(std::uint64_t bound) {
    if (bound == 0) {
      return 0;
    }
    // Rejection sampling keeps the draw unbiased.
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t value = _gen();
    while (value >= limit) {
      value = _gen();
    }
    return value % bound;
  }

  double next_double() {
    return static_cast<double>(_gen() >> 11) * 0x1.0p-53;
  }

  bool next_bool() { return (_gen() & 1) != 0; }

  bool next_with_probability(double p) { return next_double() < p; }

  template <typename T> void shuffle(std::vector<T> &values) {
    for (std::size_t i = values.size(); i > 1; --i) {
      std::swap(values[i - 1], values[next_index(i)]);
    }
  }

  /// Derives an independent child stream, e.g. one per benchmark cell.
  Rng fork() { return Rng(next_u64() ^ 0x9e3779b97f4a7c15ULL); }

private:
  std::mt19937_64 _gen;
};

} // namespace kwaymlp
