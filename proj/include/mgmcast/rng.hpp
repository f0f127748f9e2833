#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

namespace mgmcast {

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Derives an independent stream seed as a pure function of (seed, stream).
/// Substreams let parallel workers draw realization m = f(seed, m) without
/// sharing generator state.
constexpr std::uint64_t substream(std::uint64_t seed, std::uint64_t stream) {
  return splitmix64(splitmix64(seed) ^ splitmix64(stream + 0x7F4A7C15ULL));
}

/// Deterministic random stream. Gaussian draws use Box-Muller on the raw
/// mt19937_64 output, so sequences are bit-identical across standard
/// library implementations (std::normal_distribution would not be).
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform on (0, 1]; safe as a log() argument.
  double uniform_pos() {
    return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
  }

  /// Unit-mean exponential.
  double exponential() { return -std::log(uniform_pos()); }

  /// Circularly symmetric complex Gaussian CN(0, variance).
  std::complex<double> cgauss(double variance) {
    const double u = uniform_pos();
    const double phi = 2.0 * M_PI * uniform();
    const double r = std::sqrt(-variance * std::log(u));
    return {r * std::cos(phi), r * std::sin(phi)};
  }

  /// Real standard normal N(0, 1).
  double gauss() {
    const double u = uniform_pos();
    const double phi = 2.0 * M_PI * uniform();
    return std::sqrt(-2.0 * std::log(u)) * std::cos(phi);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace mgmcast
