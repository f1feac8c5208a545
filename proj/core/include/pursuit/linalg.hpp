#pragma once

#include "pursuit/sensing.hpp"
#include "pursuit/support.hpp"
#include "pursuit/types.hpp"

namespace pursuit {

/// Inner product; throws UsageError on length mismatch.
double dot(const Vector& a, const Vector& b);

/// min_w |rhs - Phi_T w|_2 for the columns of `op` selected by `support`.
/// A non-owning view: all three referents must outlive the solve.
struct RestrictedSystem {
  const SenseOperator& op;
  const SupportSet& support;
  const Vector& rhs;
};

enum class LsMethod {
  ConjugateGradient,  // CG on the normal equations (CGLS form)
  Richardson,         // fixed step 2 / (lambda_min + lambda_max)
};

struct LsOptions {
  double tol = 1e-10;
  int max_iter = 100;
  LsMethod method = LsMethod::ConjugateGradient;
};

enum class LsStop { Converged, MaxIterations };

struct LsResult {
  Vector solution;            // aligned with the support
  int iterations = 0;
  LsStop stop = LsStop::Converged;
  double normal_residual = 0.0;  // |Phi_T^*(rhs - Phi_T w)|
  double initial_normal = 0.0;   // |Phi_T^* rhs|
  std::uint64_t matvecs = 0;
};

/// Applies the pseudoinverse of Phi_T to the right-hand side iteratively.
///
/// Stops once |Phi_T^*(u - Phi_T w)| <= tol * |Phi_T^* u| (Converged) or after
/// max_iter iterations (MaxIterations). The stopping test is always made on a
/// freshly recomputed residual, never on a recurrence.
///
/// Throws UsageError for an empty support, |support| > m, indices outside
/// [0, N), tol <= 0, max_iter < 1 or a wrong-length rhs. Throws SolverError
/// if the normal residual grows 10x above its running minimum or goes
/// non-finite.
LsResult restricted_least_squares(const RestrictedSystem& sys, const LsOptions& options = {});

namespace detail {

// Tracks the normal residual across iterations; throws SolverError when it
// goes non-finite or rises 10x above its running minimum.
class DivergenceGuard {
 public:
  explicit DivergenceGuard(double initial) : best_(initial) {}
  void observe(double value, int iteration);

 private:
  double best_;
};

}  // namespace detail

}  // namespace pursuit
