#pragma once

#include <atomic>
#include <cstdint>
#include <memory>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "pursuit/support.hpp"
#include "pursuit/types.hpp"

namespace pursuit {

enum class Ensemble {
  Gaussian,    // i.i.d. N(0, 1/m)
  Bernoulli,   // i.i.d. +-1/sqrt(m)
  PartialDCT,  // m rows of the orthonormal DCT-II, scaled by sqrt(N/m)
  Identity,    // m == N identity; diagnostics and tests
};

std::string_view to_string(Ensemble e);
Ensemble ensemble_from_string(std::string_view name);

namespace detail {
class DctPlan;
}

/// An m x N measurement map with forward and adjoint application.
///
/// Dense ensembles store their entries; PartialDCT stores only the sampled
/// row indices and applies a fast O(N log N) transform. Entries are a pure
/// function of (ensemble, m, N, seed); Gaussian and Bernoulli entries are
/// drawn row by row, so the first m rows of a taller operator with the same
/// seed match up to the 1/sqrt(m) scale.
///
/// Application is const and thread-safe. Every forward/adjoint call,
/// including the restricted variants, bumps an atomic matvec counter.
class SenseOperator {
 public:
  SenseOperator(Ensemble ensemble, Index m, Index n, std::uint64_t seed);
  SenseOperator(const SenseOperator& other);
  SenseOperator& operator=(const SenseOperator& other);
  ~SenseOperator();

  Ensemble ensemble() const { return ensemble_; }
  Index rows() const { return m_; }
  Index cols() const { return n_; }
  std::uint64_t seed() const { return seed_; }

  // Phi x, length m.
  Vector forward(const Vector& x) const;
  // Phi^* v, length N.
  Vector adjoint(const Vector& v) const;
  // Phi_T w for w aligned with `support`.
  Vector forward_restricted(const SupportSet& support, const Vector& w) const;
  // (Phi^* v) restricted to `support`.
  Vector adjoint_restricted(const SupportSet& support, const Vector& v) const;

  // Explicit m x N matrix. For PartialDCT this is built from the cosine
  // formula, not from the fast transform.
  Matrix dense() const;

  // Sampled DCT rows (sorted); empty for other ensembles.
  const std::vector<Index>& sampled_rows() const { return rows_; }

  std::uint64_t matvec_count() const { return matvecs_.load(std::memory_order_relaxed); }
  void reset_matvec_count() const { matvecs_.store(0, std::memory_order_relaxed); }

 private:
  void count() const { matvecs_.fetch_add(1, std::memory_order_relaxed); }

  Ensemble ensemble_;
  Index m_;
  Index n_;
  std::uint64_t seed_;
  Matrix entries_;          // Gaussian / Bernoulli
  std::vector<Index> rows_; // PartialDCT
  double dct_scale_ = 1.0;
  std::shared_ptr<const detail::DctPlan> plan_;
  mutable std::atomic<std::uint64_t> matvecs_{0};
};

SenseOperator make_operator(Ensemble ensemble, Index m, Index n, std::uint64_t seed);

/// Serializable recipe for an operator. Entries are never stored.
struct OperatorDescriptor {
  Ensemble ensemble = Ensemble::Gaussian;
  Index m = 1;
  Index n = 1;
  std::uint64_t seed = 0;

  SenseOperator build() const { return make_operator(ensemble, m, n, seed); }
  static OperatorDescriptor of(const SenseOperator& op);
};

void to_json(nlohmann::json& j, const OperatorDescriptor& d);
void from_json(const nlohmann::json& j, OperatorDescriptor& d);

/// Randomized lower bound on the restricted isometry constant at sparsity n,
/// in the un-squared form (1 - d)|v| <= |Phi v| <= (1 + d)|v|.
struct RicEstimate {
  Index n = 0;
  double delta_lower = 0.0;
  int trials = 0;
  std::uint64_t seed = 0;
  // Unit n-sparse vector attaining delta_lower.
  Vector witness;
};

/// Probes `trials` random unit n-sparse vectors (uniform support, Gaussian
/// coefficients). When C(N, n) <= trials every support is visited once, in
/// lexicographic order, before random supports are drawn.
RicEstimate empirical_ric(const SenseOperator& op, Index n, int trials, std::uint64_t seed);

/// max(1 - r, r - 1) for r = |Phi v|; the quantity maximized by empirical_ric.
double isometry_deviation(const SenseOperator& op, const Vector& v);

}  // namespace pursuit
