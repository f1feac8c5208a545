#include "pursuit/support.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <string>

namespace pursuit {

bool all_finite(const Vector& v) { return v.allFinite(); }

void require_finite(const Vector& v, const char* what) {
  if (!v.allFinite()) throw UsageError(std::string(what) + ": entries must be finite");
}

SupportSet SupportSet::from_indices(std::vector<Index> indices, Index dim) {
  std::sort(indices.begin(), indices.end());
  if (std::adjacent_find(indices.begin(), indices.end()) != indices.end())
    throw UsageError("SupportSet: duplicate index");
  if (!indices.empty() && (indices.front() < 0 || indices.back() >= dim))
    throw UsageError("SupportSet: index outside [0, " + std::to_string(dim) + ")");
  SupportSet out;
  out.indices_ = std::move(indices);
  return out;
}

SupportSet SupportSet::from_indices(std::initializer_list<Index> indices, Index dim) {
  return from_indices(std::vector<Index>(indices), dim);
}

SupportSet SupportSet::of(const Vector& x) {
  SupportSet out;
  for (Index j = 0; j < x.size(); ++j)
    if (x[j] != 0.0) out.indices_.push_back(j);
  return out;
}

bool SupportSet::contains(Index j) const {
  return std::binary_search(indices_.begin(), indices_.end(), j);
}

SupportSet SupportSet::unite(const SupportSet& other) const {
  SupportSet out;
  out.indices_.reserve(indices_.size() + other.indices_.size());
  std::set_union(indices_.begin(), indices_.end(), other.indices_.begin(), other.indices_.end(),
                 std::back_inserter(out.indices_));
  return out;
}

Vector SupportSet::embed(const Vector& values, Index dim) const {
  if (values.size() != size()) throw UsageError("SupportSet::embed: length mismatch");
  Vector out = Vector::Zero(dim);
  for (Index k = 0; k < size(); ++k) {
    const Index j = (*this)[k];
    if (j >= dim) throw UsageError("SupportSet::embed: index outside target dimension");
    out[j] = values[k];
  }
  return out;
}

Vector SupportSet::restrict(const Vector& x) const {
  Vector out(size());
  for (Index k = 0; k < size(); ++k) {
    const Index j = (*this)[k];
    if (j >= x.size()) throw UsageError("SupportSet::restrict: index outside vector");
    out[k] = x[j];
  }
  return out;
}

namespace {

SupportSet select_largest(const Vector& x, Index k, const SupportSet* excluded) {
  std::vector<Index> candidates;
  candidates.reserve(static_cast<std::size_t>(x.size()));
  for (Index j = 0; j < x.size(); ++j) {
    if (x[j] == 0.0) continue;
    if (excluded != nullptr && excluded->contains(j)) continue;
    candidates.push_back(j);
  }
  const auto keep = static_cast<std::size_t>(std::clamp<Index>(k, 0, static_cast<Index>(candidates.size())));
  const auto by_magnitude = [&x](Index a, Index b) {
    const double ma = std::abs(x[a]);
    const double mb = std::abs(x[b]);
    return ma > mb || (ma == mb && a < b);
  };
  std::partial_sort(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(keep),
                    candidates.end(), by_magnitude);
  candidates.resize(keep);
  return SupportSet::from_indices(std::move(candidates), x.size());
}

}  // namespace

SupportSet largest_entries(const Vector& x, Index k) { return select_largest(x, k, nullptr); }

SupportSet largest_entries(const Vector& x, Index k, const SupportSet& excluded) {
  return select_largest(x, k, &excluded);
}

}  // namespace pursuit
