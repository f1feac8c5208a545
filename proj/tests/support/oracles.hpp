#pragma once

// Reference implementations used only by tests. None of these call into the
// code path they are used to check.

#include <Eigen/Cholesky>
#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <span>
#include <vector>

#include "pursuit/types.hpp"

namespace pursuit::oracle {

// Neumaier-compensated inner product.
inline double compensated_dot(const Vector& a, const Vector& b) {
  double sum = 0.0;
  double carry = 0.0;
  for (Index i = 0; i < a.size(); ++i) {
    const double term = a[i] * b[i];
    const double t = sum + term;
    if (std::abs(sum) >= std::abs(term))
      carry += (sum - t) + term;
    else
      carry += (term - t) + sum;
    sum = t;
  }
  return sum + carry;
}

// Solve (A^T A) w = A^T u by Cholesky on the explicit Gram matrix.
inline Vector normal_equation_solve(const Matrix& a, const Vector& u) {
  const Matrix gram = a.transpose() * a;
  const Vector rhs = a.transpose() * u;
  return gram.llt().solve(rhs);
}

// Orthonormal DCT-II matrix, row k, column j, from the cosine formula.
inline Matrix dct_matrix(Index n) {
  Matrix c(n, n);
  for (Index k = 0; k < n; ++k) {
    const double alpha = k == 0 ? std::sqrt(1.0 / n) : std::sqrt(2.0 / n);
    for (Index j = 0; j < n; ++j)
      c(k, j) = alpha * std::cos(std::numbers::pi * (2 * j + 1) * k / (2.0 * n));
  }
  return c;
}

// head() via a full stable sort.
inline Vector head_by_sort(const Vector& x, Index s) {
  std::vector<Index> order(static_cast<std::size_t>(x.size()));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Index a, Index b) { return std::abs(x[a]) > std::abs(x[b]); });
  Vector out = Vector::Zero(x.size());
  for (Index k = 0; k < s; ++k) out[order[k]] = x[order[k]];
  return out;
}

inline bool comparable(std::span<const double> values, const std::vector<Index>& subset) {
  for (Index i : subset)
    for (Index j : subset)
      if (std::abs(values[i]) > 2.0 * std::abs(values[j])) return false;
  return true;
}

// Exhaustive search over all nonempty subsets. Tie on energy: the subset
// whose largest element (lowest position among equal maxima) comes first.
inline std::vector<Index> regularize_brute_force(std::span<const double> values) {
  const auto n = static_cast<Index>(values.size());
  std::vector<Index> best;
  double best_energy = -1.0;
  Index best_head = n;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    std::vector<Index> subset;
    for (Index i = 0; i < n; ++i)
      if (mask & (std::uint64_t{1} << i)) subset.push_back(i);
    if (!comparable(values, subset)) continue;
    double energy = 0.0;
    Index head = subset.front();
    for (Index i : subset) {
      energy += values[i] * values[i];
      if (std::abs(values[i]) > std::abs(values[head])) head = i;
    }
    if (energy > best_energy || (energy == best_energy && head < best_head)) {
      best = subset;
      best_energy = energy;
      best_head = head;
    }
  }
  return best;
}

}  // namespace pursuit::oracle
