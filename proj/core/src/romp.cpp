#include <cmath>
#include <string>

#include "greedy_common.hpp"
#include "pursuit/greedy.hpp"

namespace pursuit {

RecoveryResult romp(const SenseOperator& op, const Vector& u, Index s, const RompOptions& options) {
  detail::require_measurements(op, u, "romp");
  if (s < 1 || s > op.rows())
    throw UsageError("romp: need 1 <= s <= m (got s=" + std::to_string(s) +
                     ", m=" + std::to_string(op.rows()) + ")");
  if (!(options.residual_tol >= 0.0)) throw UsageError("romp: residual_tol must be >= 0");

  const Index n = op.cols();
  const double stop_norm = options.residual_tol * u.norm();
  RecoveryResult out;
  out.halted_by = HaltReason::MaxIterations;
  SupportSet selected;
  Vector coeffs;
  Vector residual = u;

  for (int round = 1; round <= s; ++round) {
    if (selected.size() >= 2 * s) {
      out.halted_by = HaltReason::SparsityReached;
      break;
    }
    const Vector proxy = op.adjoint(residual);
    ++out.matvecs;

    // Identify: the s largest proxy coordinates off I, or all nonzero ones.
    const SupportSet identified = largest_entries(proxy, s, selected);
    if (identified.empty()) {
      out.halted_by = HaltReason::ProxyZero;
      break;
    }
    const SupportSet chosen = romp_regularize(proxy, identified);
    if (selected.size() + chosen.size() > op.rows()) {
      out.halted_by = HaltReason::SupportCap;
      break;
    }
    selected = selected.unite(chosen);

    const LsResult fit = detail::refit(op, selected, u, options.ls, "romp", round);
    out.matvecs += fit.matvecs;
    coeffs = fit.solution;
    residual = u - op.forward_restricted(selected, coeffs);
    ++out.matvecs;

    IterationTrace step;
    step.identified = identified;
    step.selected = chosen;
    for (Index j : chosen) step.selected_proxy.push_back(std::abs(proxy[j]));
    step.ls_support = selected;
    step.ls_values = coeffs;
    step.support = selected;
    step.residual_norm = residual.norm();
    out.residual_norms.push_back(step.residual_norm);
    out.trace.push_back(std::move(step));
    out.iterations = round;

    if (out.residual_norms.back() <= stop_norm) {
      out.halted_by = HaltReason::ResidualSmall;
      break;
    }
    if (round == s && selected.size() >= 2 * s) out.halted_by = HaltReason::SparsityReached;
  }

  out.estimate = selected.empty() ? Vector::Zero(n) : selected.embed(coeffs, n);
  out.support = selected;
  return out;
}

}  // namespace pursuit
