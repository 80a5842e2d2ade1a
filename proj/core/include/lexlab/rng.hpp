#pragma once

#include <cstdint>
#include <random>

namespace lexlab {

/// Seeded random stream shared by every stochastic operation in the library.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the C++
/// standard. Conversions to reals and integers are implemented here rather
/// than through <random> distributions, whose algorithms are left to the
/// standard library vendor; this keeps experiment streams identical across
/// toolchains.
class RngStream {
 public:
  static constexpr const char* kAlgorithm = "mt19937_64";

  explicit RngStream(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  /// Independent stream for a named purpose, e.g. embedding generation vs
  /// episode sampling. Salts are mixed with splitmix64 so nearby seeds and
  /// salts do not produce correlated engines.
  RngStream derive(std::uint64_t salt) const;

  std::uint64_t next_u64() {
    ++position_;
    return engine_();
  }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [0, n). Rejection sampling, so unbiased.
  std::uint64_t below(std::uint64_t n);

  /// Standard normal via Box-Muller; consumes exactly two draws.
  double normal();

  bool bernoulli(double p) { return uniform() < p; }

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t position() const noexcept { return position_; }

 private:
  std::uint64_t seed_;
  std::uint64_t position_ = 0;
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace lexlab
