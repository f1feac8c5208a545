#include "pursuit/sensing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <nlohmann/json.hpp>

#include "dct.hpp"
#include "pursuit/rng.hpp"

namespace pursuit {

std::string_view to_string(Ensemble e) {
  switch (e) {
    case Ensemble::Gaussian: return "gaussian";
    case Ensemble::Bernoulli: return "bernoulli";
    case Ensemble::PartialDCT: return "dct";
    case Ensemble::Identity: return "identity";
  }
  return "unknown";
}

Ensemble ensemble_from_string(std::string_view name) {
  if (name == "gaussian") return Ensemble::Gaussian;
  if (name == "bernoulli") return Ensemble::Bernoulli;
  if (name == "dct" || name == "partial_dct") return Ensemble::PartialDCT;
  if (name == "identity") return Ensemble::Identity;
  throw UsageError("unknown ensemble '" + std::string(name) +
                   "' (expected gaussian, bernoulli, dct or identity)");
}

SenseOperator::SenseOperator(Ensemble ensemble, Index m, Index n, std::uint64_t seed)
    : ensemble_(ensemble), m_(m), n_(n), seed_(seed) {
  if (m < 1 || n < 1 || m > n)
    throw UsageError("make_operator: need 1 <= m <= N (got m=" + std::to_string(m) +
                     ", N=" + std::to_string(n) + ")");
  Rng rng(seed);
  switch (ensemble) {
    case Ensemble::Gaussian: {
      const double scale = 1.0 / std::sqrt(static_cast<double>(m));
      entries_.resize(m, n);
      for (Index i = 0; i < m; ++i)
        for (Index j = 0; j < n; ++j) entries_(i, j) = scale * rng.gaussian();
      break;
    }
    case Ensemble::Bernoulli: {
      const double scale = 1.0 / std::sqrt(static_cast<double>(m));
      entries_.resize(m, n);
      for (Index i = 0; i < m; ++i)
        for (Index j = 0; j < n; ++j) entries_(i, j) = scale * rng.sign();
      break;
    }
    case Ensemble::PartialDCT: {
      rows_ = rng.sample_without_replacement(n, m);
      std::sort(rows_.begin(), rows_.end());
      dct_scale_ = std::sqrt(static_cast<double>(n) / static_cast<double>(m));
      plan_ = std::make_shared<const detail::DctPlan>(n);
      break;
    }
    case Ensemble::Identity:
      if (m != n) throw UsageError("make_operator: identity ensemble requires m == N");
      break;
  }
}

SenseOperator::SenseOperator(const SenseOperator& other)
    : ensemble_(other.ensemble_),
      m_(other.m_),
      n_(other.n_),
      seed_(other.seed_),
      entries_(other.entries_),
      rows_(other.rows_),
      dct_scale_(other.dct_scale_),
      plan_(other.plan_),
      matvecs_(other.matvec_count()) {}

SenseOperator& SenseOperator::operator=(const SenseOperator& other) {
  if (this == &other) return *this;
  ensemble_ = other.ensemble_;
  m_ = other.m_;
  n_ = other.n_;
  seed_ = other.seed_;
  entries_ = other.entries_;
  rows_ = other.rows_;
  dct_scale_ = other.dct_scale_;
  plan_ = other.plan_;
  matvecs_.store(other.matvec_count(), std::memory_order_relaxed);
  return *this;
}

SenseOperator::~SenseOperator() = default;

Vector SenseOperator::forward(const Vector& x) const {
  if (x.size() != n_)
    throw UsageError("forward: expected length " + std::to_string(n_) + ", got " +
                     std::to_string(x.size()));
  require_finite(x, "forward");
  count();
  switch (ensemble_) {
    case Ensemble::Gaussian:
    case Ensemble::Bernoulli:
      return entries_ * x;
    case Ensemble::PartialDCT: {
      const Vector full = plan_->forward(x);
      Vector out(m_);
      for (Index i = 0; i < m_; ++i) out[i] = dct_scale_ * full[rows_[static_cast<std::size_t>(i)]];
      return out;
    }
    case Ensemble::Identity:
      return x;
  }
  return {};
}

Vector SenseOperator::adjoint(const Vector& v) const {
  if (v.size() != m_)
    throw UsageError("adjoint: expected length " + std::to_string(m_) + ", got " +
                     std::to_string(v.size()));
  require_finite(v, "adjoint");
  count();
  switch (ensemble_) {
    case Ensemble::Gaussian:
    case Ensemble::Bernoulli:
      return entries_.transpose() * v;
    case Ensemble::PartialDCT: {
      Vector full = Vector::Zero(n_);
      for (Index i = 0; i < m_; ++i) full[rows_[static_cast<std::size_t>(i)]] = dct_scale_ * v[i];
      return plan_->inverse(full);
    }
    case Ensemble::Identity:
      return v;
  }
  return {};
}

Vector SenseOperator::forward_restricted(const SupportSet& support, const Vector& w) const {
  if (w.size() != support.size()) throw UsageError("forward_restricted: length mismatch");
  if (!support.empty() && support[support.size() - 1] >= n_)
    throw UsageError("forward_restricted: support index outside [0, N)");
  switch (ensemble_) {
    case Ensemble::Gaussian:
    case Ensemble::Bernoulli: {
      require_finite(w, "forward_restricted");
      count();
      Vector out = Vector::Zero(m_);
      for (Index k = 0; k < support.size(); ++k) out.noalias() += w[k] * entries_.col(support[k]);
      return out;
    }
    case Ensemble::PartialDCT:
    case Ensemble::Identity:
      return forward(support.embed(w, n_));
  }
  return {};
}

Vector SenseOperator::adjoint_restricted(const SupportSet& support, const Vector& v) const {
  if (v.size() != m_) throw UsageError("adjoint_restricted: length mismatch");
  if (!support.empty() && support[support.size() - 1] >= n_)
    throw UsageError("adjoint_restricted: support index outside [0, N)");
  switch (ensemble_) {
    case Ensemble::Gaussian:
    case Ensemble::Bernoulli: {
      require_finite(v, "adjoint_restricted");
      count();
      Vector out(support.size());
      for (Index k = 0; k < support.size(); ++k) out[k] = entries_.col(support[k]).dot(v);
      return out;
    }
    case Ensemble::PartialDCT:
    case Ensemble::Identity:
      return support.restrict(adjoint(v));
  }
  return {};
}

Matrix SenseOperator::dense() const {
  switch (ensemble_) {
    case Ensemble::Gaussian:
    case Ensemble::Bernoulli:
      return entries_;
    case Ensemble::PartialDCT: {
      Matrix out(m_, n_);
      const double nn = static_cast<double>(n_);
      for (Index i = 0; i < m_; ++i) {
        const Index k = rows_[static_cast<std::size_t>(i)];
        const double alpha = k == 0 ? std::sqrt(1.0 / nn) : std::sqrt(2.0 / nn);
        for (Index j = 0; j < n_; ++j)
          out(i, j) = dct_scale_ * alpha *
                      std::cos(std::numbers::pi * (2.0 * static_cast<double>(j) + 1.0) *
                               static_cast<double>(k) / (2.0 * nn));
      }
      return out;
    }
    case Ensemble::Identity:
      return Matrix::Identity(m_, n_);
  }
  return {};
}

SenseOperator make_operator(Ensemble ensemble, Index m, Index n, std::uint64_t seed) {
  return SenseOperator(ensemble, m, n, seed);
}

OperatorDescriptor OperatorDescriptor::of(const SenseOperator& op) {
  return {op.ensemble(), op.rows(), op.cols(), op.seed()};
}

void to_json(nlohmann::json& j, const OperatorDescriptor& d) {
  j = nlohmann::json{{"ensemble", to_string(d.ensemble)}, {"m", d.m}, {"N", d.n}, {"seed", d.seed}};
}

void from_json(const nlohmann::json& j, OperatorDescriptor& d) {
  d.ensemble = ensemble_from_string(j.at("ensemble").get<std::string>());
  d.m = j.at("m").get<Index>();
  d.n = j.at("N").get<Index>();
  d.seed = j.at("seed").get<std::uint64_t>();
}

double isometry_deviation(const SenseOperator& op, const Vector& v) {
  const double r = op.forward(v).norm();
  return std::max(1.0 - r, r - 1.0);
}

namespace {

// C(n, k) saturated at `cap`.
std::uint64_t binomial_capped(Index n, Index k, std::uint64_t cap) {
  k = std::min(k, n - k);
  long double acc = 1.0L;
  for (Index i = 1; i <= k; ++i) {
    acc = acc * static_cast<long double>(n - k + i) / static_cast<long double>(i);
    if (acc > static_cast<long double>(cap)) return cap + 1;
  }
  return static_cast<std::uint64_t>(std::llround(acc));
}

// Advance a lexicographic k-combination of [0, n); false once exhausted.
bool next_combination(std::vector<Index>& c, Index n) {
  const auto k = static_cast<Index>(c.size());
  for (Index i = k - 1; i >= 0; --i) {
    auto& slot = c[static_cast<std::size_t>(i)];
    if (slot < n - k + i) {
      ++slot;
      for (Index t = i + 1; t < k; ++t)
        c[static_cast<std::size_t>(t)] = c[static_cast<std::size_t>(t - 1)] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace

RicEstimate empirical_ric(const SenseOperator& op, Index n, int trials, std::uint64_t seed) {
  if (n < 1 || n > op.rows())
    throw UsageError("empirical_ric: need 1 <= n <= m (got n=" + std::to_string(n) +
                     ", m=" + std::to_string(op.rows()) + ")");
  if (trials < 1) throw UsageError("empirical_ric: trials must be >= 1");

  const Index dim = op.cols();
  const bool exhaustive =
      binomial_capped(dim, n, static_cast<std::uint64_t>(trials)) <= static_cast<std::uint64_t>(trials);
  std::vector<Index> combo(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) combo[static_cast<std::size_t>(i)] = i;
  bool combos_left = exhaustive;

  Rng rng(seed);
  RicEstimate est;
  est.n = n;
  est.trials = trials;
  est.seed = seed;
  est.delta_lower = -1.0;

  for (int t = 0; t < trials; ++t) {
    std::vector<Index> support;
    if (combos_left) {
      support = combo;
      combos_left = next_combination(combo, dim);
    } else {
      support = rng.sample_without_replacement(dim, n);
    }
    Vector v = Vector::Zero(dim);
    for (Index j : support) {
      double g = 0.0;
      while (g == 0.0) g = rng.gaussian();
      v[j] = g;
    }
    v /= v.norm();
    const double dev = isometry_deviation(op, v);
    if (dev > est.delta_lower) {
      est.delta_lower = dev;
      est.witness = std::move(v);
    }
  }
  est.delta_lower = std::max(est.delta_lower, 0.0);
  return est;
}

}  // namespace pursuit
