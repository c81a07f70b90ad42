#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace sympspec {

/// Explicit random state. Every randomized routine takes one of these by
/// reference; there is no ambient generator anywhere in the library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0) : engine_(seed) {}

  /// Independent stream keyed by (masterSeed, suite, trialIndex). The key is
  /// hashed so that neighbouring trial indices give unrelated streams.
  static Rng stream(std::uint64_t masterSeed, std::string_view suite,
                    std::uint64_t trialIndex);

  double normal() { return normal_(engine_); }
  double uniform() { return uniform_(engine_); }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform integer in [lo, hi].
  std::size_t uniform_index(std::size_t lo, std::size_t hi);
  std::uint64_t next_u64() { return engine_(); }

  std::vector<double> normal_vector(std::size_t n);

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t fnv1a(std::string_view text);

}  // namespace sympspec
