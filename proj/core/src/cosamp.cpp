#include <cmath>
#include <string>

#include "greedy_common.hpp"
#include "pursuit/greedy.hpp"

namespace pursuit {

RecoveryResult cosamp(const SenseOperator& op, const Vector& u, Index s,
                      const CosampOptions& options) {
  detail::require_measurements(op, u, "cosamp");
  if (s < 1) throw UsageError("cosamp: s must be >= 1");
  if (3 * s > op.rows())
    throw UsageError("cosamp: need 3s <= m (got s=" + std::to_string(s) +
                     ", m=" + std::to_string(op.rows()) + ")");
  if (!(options.eta >= 0.0)) throw UsageError("cosamp: eta must be >= 0");
  if (options.max_iter < 1) throw UsageError("cosamp: max_iter must be >= 1");

  const Index n = op.cols();
  RecoveryResult out;
  out.halted_by = HaltReason::MaxIterations;
  out.estimate = Vector::Zero(n);  // a^0 = 0
  SupportSet current;              // supp(a^{k-1})
  Vector residual = u;             // v
  double previous_norm = u.norm();

  for (int k = 1; k <= options.max_iter; ++k) {
    const Vector proxy = op.adjoint(residual);
    ++out.matvecs;
    const SupportSet omega = largest_entries(proxy, 2 * s);
    const SupportSet merged = omega.unite(current);
    if (merged.empty()) {
      out.halted_by = HaltReason::ProxyZero;
      break;
    }

    const LsResult fit = detail::refit(op, merged, u, options.ls, "cosamp", k);
    out.matvecs += fit.matvecs;
    const Vector b = merged.embed(fit.solution, n);

    // Prune to the s largest entries of b.
    const SupportSet pruned = largest_entries(b, s);
    out.estimate = pruned.embed(pruned.restrict(b), n);
    residual = pruned.empty() ? u : Vector(u - op.forward_restricted(pruned, pruned.restrict(b)));
    if (!pruned.empty()) ++out.matvecs;

    IterationTrace step;
    step.identified = omega;
    step.selected = merged;
    for (Index j : merged) step.selected_proxy.push_back(std::abs(proxy[j]));
    step.ls_support = merged;
    step.ls_values = fit.solution;
    step.support = pruned;
    step.residual_norm = residual.norm();
    out.residual_norms.push_back(step.residual_norm);
    out.trace.push_back(std::move(step));
    out.iterations = k;

    const double norm = out.residual_norms.back();
    const bool same_support = pruned == current;
    current = pruned;
    if (norm <= options.eta) {
      out.halted_by = HaltReason::ResidualSmall;
      break;
    }
    if (same_support && previous_norm - norm < options.stall_tol * previous_norm) {
      out.halted_by = HaltReason::SupportStalled;
      break;
    }
    previous_norm = norm;
  }

  out.support = current;
  return out;
}

}  // namespace pursuit
