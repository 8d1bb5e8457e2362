#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>

namespace sccm {

/// SplitMix64 finalizer. Used to derive independent sub-seeds from one
/// user seed: sub_seed(seed, stream) for stream = 0, 1, 2, ...
constexpr std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t sub_seed(std::uint64_t seed, std::uint64_t stream) {
  return splitmix64(seed ^ splitmix64(stream + 0x5ccaULL));
}

/// Standard normal variates by the Box-Muller transform over mt19937_64.
///
/// std::normal_distribution is implementation-defined, so the transform is
/// spelled out here: two 53-bit uniforms u1 in (0,1], u2 in [0,1) give
/// r = sqrt(-2 ln u1), and the pair (r cos 2 pi u2, r sin 2 pi u2) is
/// returned in that order.
class NormalGenerator {
public:
  explicit NormalGenerator(std::uint64_t seed) : engine_(seed) {}

  double operator()() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = 1.0 - uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
  }

  std::mt19937_64& engine() { return engine_; }

private:
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// Uniform integer in [0, n) without the modulo bias of engine() % n and
/// without relying on std::uniform_int_distribution's unspecified algorithm.
inline std::uint64_t uniform_index(std::mt19937_64& engine, std::uint64_t n) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t r;
  do {
    r = engine();
  } while (r >= limit);
  return r % n;
}

}  // namespace sccm
