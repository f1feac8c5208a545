#include "pursuit/rng.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <utility>

namespace pursuit {

double Rng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

Index Rng::uniform_index(Index n) {
  if (n <= 0) throw UsageError("uniform_index: n must be positive");
  const auto range = static_cast<std::uint64_t>(n);
  // Largest multiple of range that fits; draws at or above it are rejected.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % range;
  std::uint64_t draw;
  do {
    draw = engine_();
  } while (draw >= limit);
  return static_cast<Index>(draw % range);
}

double Rng::gaussian() {
  if (has_cached_) {
    has_cached_ = false;
    return cached_gaussian_;
  }
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  cached_gaussian_ = radius * std::sin(theta);
  has_cached_ = true;
  return radius * std::cos(theta);
}

double Rng::sign() { return (engine_() >> 63) != 0 ? 1.0 : -1.0; }

std::vector<Index> Rng::sample_without_replacement(Index n, Index k) {
  if (k < 0 || k > n) throw UsageError("sample_without_replacement: need 0 <= k <= n");
  std::vector<Index> pool(static_cast<std::size_t>(n));
  std::iota(pool.begin(), pool.end(), Index{0});
  for (Index i = 0; i < k; ++i) {
    const Index j = i + uniform_index(n - i);
    std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(j)]);
  }
  pool.resize(static_cast<std::size_t>(k));
  return pool;
}

std::vector<Index> Rng::permutation(Index n) { return sample_without_replacement(n, n); }

std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t trial_index, Stream stream) {
  return mix64(mix64(master_seed ^ mix64(trial_index)) + static_cast<std::uint64_t>(stream));
}

}  // namespace pursuit
