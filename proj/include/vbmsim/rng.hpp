// Copyright (C) 2026 vbmsim contributors
// SPDX-License-Identifier: Apache-2.0
//
#pragma once

#include <complex>
#include <cstdint>
#include <random>

namespace vbmsim {

// Deterministic random source. All randomness in the simulator flows through
// explicitly seeded instances of this class; there is no hidden global state.
// Uniform doubles are derived from the top 53 bits of the mt19937_64 output
// and Gaussians use an explicit Box-Muller transform, so a given seed yields
// the same sequence on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, 1).
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Standard normal via Box-Muller. Consumes exactly two uniforms.
  double gaussian() {
    const double u1 = 1.0 - uniform();  // (0, 1], keeps the log finite
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    return r * std::cos(2.0 * kPi * u2);
  }

  // Circularly-symmetric complex normal with unit total variance.
  std::complex<double> cn01() {
    const double u1 = 1.0 - uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-std::log(u1));  // sqrt(-2 ln u) / sqrt(2)
    return {r * std::cos(2.0 * kPi * u2), r * std::sin(2.0 * kPi * u2)};
  }

  // Independent child stream. fork(k) depends only on the parent seed and k,
  // so work items can be seeded in any processing order.
  Rng fork(std::uint64_t stream) const {
    return Rng(splitmix64(seed_ + 0x9E3779B97F4A7C15ull * (stream + 1)));
  }

  std::uint64_t seed() const { return seed_; }

  static std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

 private:
  static constexpr double kPi = 3.14159265358979323846;
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace vbmsim
