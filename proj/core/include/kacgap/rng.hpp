#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace kacgap {

/// SplitMix64 step; used to expand seeds.
std::uint64_t splitmix64(std::uint64_t& state);

/// xoshiro256** with a stream derived from (seed, stream), so replica r draws
/// the same numbers no matter which thread runs it.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()() { return next(); }

  std::uint64_t next();
  /// Uniform on [0, 1) with 53 random bits.
  double uniform01();
  /// Standard normal (Marsaglia polar method; the spare value is cached).
  double normal();
  /// Uniform direction on S^2: normalized vector of three standard normals.
  std::array<double, 3> unit_vector();
  /// -log(1 - u) / rate; +infinity for rate == 0.
  double exponential(double rate);

 private:
  std::array<std::uint64_t, 4> s_{};
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace kacgap
