#include "pursuit/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pursuit/rng.hpp"

namespace pursuit {

double dot(const Vector& a, const Vector& b) {
  if (a.size() != b.size())
    throw UsageError("dot: length mismatch (" + std::to_string(a.size()) + " vs " +
                     std::to_string(b.size()) + ")");
  return a.dot(b);
}

void detail::DivergenceGuard::observe(double value, int iteration) {
  if (!std::isfinite(value))
    throw SolverError("restricted_least_squares: non-finite residual at iteration " +
                          std::to_string(iteration),
                      iteration);
  best_ = std::min(best_, value);
  if (value > 10.0 * best_)
    throw SolverError("restricted_least_squares: diverged at iteration " +
                          std::to_string(iteration) + " (residual 10x above its minimum)",
                      iteration);
}

namespace {

using detail::DivergenceGuard;

void validate(const RestrictedSystem& sys, const LsOptions& options) {
  const Index k = sys.support.size();
  if (k < 1) throw UsageError("restricted_least_squares: empty support");
  if (k > sys.op.rows())
    throw UsageError("restricted_least_squares: |support| = " + std::to_string(k) +
                     " exceeds m = " + std::to_string(sys.op.rows()));
  if (sys.support[k - 1] >= sys.op.cols())
    throw UsageError("restricted_least_squares: support index outside [0, N)");
  if (sys.rhs.size() != sys.op.rows())
    throw UsageError("restricted_least_squares: rhs length must equal m");
  require_finite(sys.rhs, "restricted_least_squares");
  if (!(options.tol > 0.0)) throw UsageError("restricted_least_squares: tol must be > 0");
  if (options.max_iter < 1) throw UsageError("restricted_least_squares: max_iter must be >= 1");
}

class RestrictedApply {
 public:
  explicit RestrictedApply(const RestrictedSystem& sys) : sys_(sys) {}

  Vector forward(const Vector& w) {
    ++matvecs;
    return sys_.op.forward_restricted(sys_.support, w);
  }
  Vector adjoint(const Vector& r) {
    ++matvecs;
    return sys_.op.adjoint_restricted(sys_.support, r);
  }
  // Gram product Phi_T^* Phi_T w.
  Vector gram(const Vector& w) { return adjoint(forward(w)); }

  std::uint64_t matvecs = 0;

 private:
  const RestrictedSystem& sys_;
};

LsResult solve_cg(const RestrictedSystem& sys, const LsOptions& options) {
  RestrictedApply A(sys);
  const Index k = sys.support.size();

  LsResult out;
  out.solution = Vector::Zero(k);
  Vector r = sys.rhs;
  Vector g = A.adjoint(r);
  out.initial_normal = g.norm();
  out.normal_residual = out.initial_normal;
  const double target = options.tol * out.initial_normal;
  if (out.initial_normal == 0.0) {
    out.matvecs = A.matvecs;
    return out;
  }

  DivergenceGuard guard(out.initial_normal);
  Vector p = g;
  double gamma = g.squaredNorm();
  for (int it = 1; it <= options.max_iter; ++it) {
    const Vector q = A.forward(p);
    const double qq = q.squaredNorm();
    if (!(qq > 0.0)) {
      // p lies in the null space of Phi_T: the restricted columns are
      // dependent and the recurrence cannot continue.
      throw SolverError("restricted_least_squares: singular restricted system at iteration " +
                            std::to_string(it),
                        it);
    }
    const double alpha = gamma / qq;
    out.solution.noalias() += alpha * p;
    r.noalias() -= alpha * q;
    g = A.adjoint(r);
    double gnorm = g.norm();
    out.iterations = it;

    if (gnorm <= target) {
      // Confirm on the true residual before reporting convergence.
      r = sys.rhs - A.forward(out.solution);
      g = A.adjoint(r);
      gnorm = g.norm();
      if (gnorm <= target) {
        out.normal_residual = gnorm;
        out.stop = LsStop::Converged;
        out.matvecs = A.matvecs;
        return out;
      }
      p = g;
      gamma = g.squaredNorm();
      guard.observe(gnorm, it);
      continue;
    }
    guard.observe(gnorm, it);
    const double gamma_next = g.squaredNorm();
    p = g + (gamma_next / gamma) * p;
    gamma = gamma_next;
  }

  r = sys.rhs - A.forward(out.solution);
  out.normal_residual = A.adjoint(r).norm();
  out.stop = out.normal_residual <= target ? LsStop::Converged : LsStop::MaxIterations;
  out.matvecs = A.matvecs;
  return out;
}

// Largest eigenvalue of a symmetric PSD operator by power iteration.
template <typename Apply>
double power_iteration(Apply&& apply, Index k, int steps) {
  Rng rng(0x5eed);
  Vector v(k);
  for (Index i = 0; i < k; ++i) v[i] = rng.gaussian();
  v /= v.norm();
  double lambda = 0.0;
  for (int i = 0; i < steps; ++i) {
    Vector w = apply(v);
    lambda = v.dot(w);
    const double norm = w.norm();
    if (norm == 0.0) return 0.0;
    v = w / norm;
  }
  return lambda;
}

LsResult solve_richardson(const RestrictedSystem& sys, const LsOptions& options) {
  constexpr int kPowerSteps = 50;
  RestrictedApply A(sys);
  const Index k = sys.support.size();

  LsResult out;
  out.solution = Vector::Zero(k);
  const Vector b = A.adjoint(sys.rhs);
  out.initial_normal = b.norm();
  out.normal_residual = out.initial_normal;
  if (out.initial_normal == 0.0) {
    out.matvecs = A.matvecs;
    return out;
  }

  const double lambda_max = power_iteration([&](const Vector& v) { return A.gram(v); }, k, kPowerSteps);
  const double spread = power_iteration(
      [&](const Vector& v) { Vector w = lambda_max * v - A.gram(v); return w; }, k, kPowerSteps);
  const double lambda_min = std::max(lambda_max - spread, 0.0);
  if (!(lambda_max > 0.0))
    throw SolverError("restricted_least_squares: Gram spectrum estimate failed", 0);
  const double step = 2.0 / (lambda_min + lambda_max);

  const double target = options.tol * out.initial_normal;
  DivergenceGuard guard(out.initial_normal);
  Vector g = b;
  for (int it = 1; it <= options.max_iter; ++it) {
    out.solution.noalias() += step * g;
    g = b - A.gram(out.solution);
    out.iterations = it;
    out.normal_residual = g.norm();
    if (out.normal_residual <= target) {
      out.stop = LsStop::Converged;
      out.matvecs = A.matvecs;
      return out;
    }
    guard.observe(out.normal_residual, it);
  }
  out.stop = LsStop::MaxIterations;
  out.matvecs = A.matvecs;
  return out;
}

}  // namespace

LsResult restricted_least_squares(const RestrictedSystem& sys, const LsOptions& options) {
  validate(sys, options);
  switch (options.method) {
    case LsMethod::ConjugateGradient: return solve_cg(sys, options);
    case LsMethod::Richardson: return solve_richardson(sys, options);
  }
  return {};
}

}  // namespace pursuit
