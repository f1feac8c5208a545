#include <algorithm>
#include <cmath>
#include <numeric>

#include "pursuit/greedy.hpp"

namespace pursuit {

std::vector<Index> romp_regularize(std::span<const double> values) {
  const auto n = static_cast<Index>(values.size());
  if (n == 0) throw UsageError("romp_regularize: J must be nonempty");
  for (double v : values)
    if (!(std::abs(v) > 0.0) || !std::isfinite(v))
      throw UsageError("romp_regularize: proxy values on J must be finite and nonzero");

  // Positions by decreasing magnitude, ties to the lower position.
  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  const auto mag = [&](Index pos) { return std::abs(values[static_cast<std::size_t>(pos)]); };
  std::sort(order.begin(), order.end(), [&](Index a, Index b) {
    return mag(a) > mag(b) || (mag(a) == mag(b) && a < b);
  });
  const auto sorted_mag = [&](Index k) { return mag(order[static_cast<std::size_t>(k)]); };

  Index best_start = 0;
  Index best_end = 0;
  double best_energy = -1.0;
  Index end = 0;
  for (Index start = 0; start < n; ++start) {
    end = std::max(end, start);
    while (end + 1 < n && sorted_mag(start) <= 2.0 * sorted_mag(end + 1)) ++end;
    double energy = 0.0;
    for (Index k = start; k <= end; ++k) energy += sorted_mag(k) * sorted_mag(k);
    const Index head = order[static_cast<std::size_t>(start)];
    if (energy > best_energy ||
        (energy == best_energy && head < order[static_cast<std::size_t>(best_start)])) {
      best_energy = energy;
      best_start = start;
      best_end = end;
    }
  }

  std::vector<Index> chosen(order.begin() + best_start, order.begin() + best_end + 1);
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

SupportSet romp_regularize(const Vector& proxy, const SupportSet& candidates) {
  const Vector values = candidates.restrict(proxy);
  const auto positions =
      romp_regularize(std::span<const double>(values.data(), static_cast<std::size_t>(values.size())));
  std::vector<Index> chosen;
  chosen.reserve(positions.size());
  for (Index pos : positions) chosen.push_back(candidates[pos]);
  return SupportSet::from_indices(std::move(chosen), proxy.size());
}

}  // namespace pursuit
