#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "pursuit/types.hpp"

namespace pursuit {

/// Portable pseudo-random source used for every draw in the library.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the C++
/// standard. The distributions are implemented here rather than taken from
/// <random>, since the standard leaves those implementation-defined:
///
///  - uniform():       top 53 bits of one engine word, scaled to [0, 1)
///  - uniform_index(): rejection sampling on the engine word, no modulo bias
///  - gaussian():      Box-Muller, caching the second variate of each pair
///
/// Same seed -> same stream on every conforming platform (modulo libm
/// differences in log/cos/sin).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }
  double uniform();
  Index uniform_index(Index n);
  double gaussian();
  // +1 or -1 with equal probability.
  double sign();

  // k distinct values from [0, n), in draw order (partial Fisher-Yates).
  std::vector<Index> sample_without_replacement(Index n, Index k);
  // Uniform random permutation of [0, n).
  std::vector<Index> permutation(Index n);

 private:
  std::mt19937_64 engine_;
  double cached_gaussian_ = 0.0;
  bool has_cached_ = false;
};

/// Independent draw streams for one trial.
enum class Stream : std::uint64_t {
  Operator = 1,
  Signal = 2,
  Noise = 3,
  Probe = 4,
};

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t z);

/// Seed-derivation rule shared by signals and bench:
///   trial_seed = mix64(mix64(master ^ mix64(trial_index)) + stream)
std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t trial_index,
                          Stream stream);

}  // namespace pursuit
