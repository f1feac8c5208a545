#pragma once

#include <initializer_list>
#include <span>
#include <vector>

#include "pursuit/types.hpp"

namespace pursuit {

/// Strictly increasing set of column indices in [0, N).
class SupportSet {
 public:
  SupportSet() = default;

  // Sorts and validates; duplicates or out-of-range indices are a UsageError.
  static SupportSet from_indices(std::vector<Index> indices, Index dim);
  static SupportSet from_indices(std::initializer_list<Index> indices, Index dim);
  // Indices of the nonzero entries of x.
  static SupportSet of(const Vector& x);

  Index size() const { return static_cast<Index>(indices_.size()); }
  bool empty() const { return indices_.empty(); }
  bool contains(Index j) const;
  Index operator[](Index k) const { return indices_[static_cast<std::size_t>(k)]; }

  std::span<const Index> indices() const { return indices_; }
  auto begin() const { return indices_.begin(); }
  auto end() const { return indices_.end(); }

  SupportSet unite(const SupportSet& other) const;

  // Scatter `values` (aligned with this set) into a zero vector of length dim.
  Vector embed(const Vector& values, Index dim) const;
  // Gather x on this set.
  Vector restrict(const Vector& x) const;

  friend bool operator==(const SupportSet&, const SupportSet&) = default;

 private:
  std::vector<Index> indices_;
};

/// Indices of the k largest |x_j|, ties to the lower index, returned sorted.
/// Entries equal to zero are never selected, so the result may be smaller
/// than k.
SupportSet largest_entries(const Vector& x, Index k);

/// Same selection restricted to indices outside `excluded`.
SupportSet largest_entries(const Vector& x, Index k, const SupportSet& excluded);

}  // namespace pursuit
