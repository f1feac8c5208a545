#include <string>

#include "greedy_common.hpp"
#include "pursuit/greedy.hpp"

namespace pursuit {

std::string_view to_string(HaltReason h) {
  switch (h) {
    case HaltReason::SparsityReached: return "sparsity_reached";
    case HaltReason::ResidualSmall: return "residual_small";
    case HaltReason::MaxIterations: return "max_iterations";
    case HaltReason::SupportCap: return "support_cap";
    case HaltReason::ProxyZero: return "proxy_zero";
    case HaltReason::SupportStalled: return "support_stalled";
  }
  return "unknown";
}

namespace detail {

void require_measurements(const SenseOperator& op, const Vector& u, const char* who) {
  if (u.size() != op.rows())
    throw UsageError(std::string(who) + ": measurement vector must have length m = " +
                     std::to_string(op.rows()));
  require_finite(u, who);
}

LsResult refit(const SenseOperator& op, const SupportSet& support, const Vector& u,
               const LsOptions& ls, const char* who, int iteration) {
  try {
    return restricted_least_squares({op, support, u}, ls);
  } catch (const SolverError& e) {
    throw SolverError(std::string(who) + " iteration " + std::to_string(iteration) + ": " +
                          e.what(),
                      iteration);
  }
}

}  // namespace detail

RecoveryResult omp(const SenseOperator& op, const Vector& u, Index s, const LsOptions& ls) {
  detail::require_measurements(op, u, "omp");
  if (s < 1 || s > op.rows())
    throw UsageError("omp: need 1 <= s <= m (got s=" + std::to_string(s) +
                     ", m=" + std::to_string(op.rows()) + ")");

  const Index n = op.cols();
  RecoveryResult out;
  out.halted_by = HaltReason::SparsityReached;
  SupportSet selected;
  Vector coeffs;
  Vector residual = u;

  for (int it = 1; it <= s; ++it) {
    const Vector proxy = op.adjoint(residual);
    ++out.matvecs;
    const SupportSet pick = largest_entries(proxy, 1, selected);
    if (pick.empty()) {
      out.halted_by = HaltReason::ProxyZero;
      break;
    }
    selected = selected.unite(pick);

    const LsResult fit = detail::refit(op, selected, u, ls, "omp", it);
    out.matvecs += fit.matvecs;
    coeffs = fit.solution;
    residual = u - op.forward_restricted(selected, coeffs);
    ++out.matvecs;

    IterationTrace step;
    step.identified = pick;
    step.selected = pick;
    step.selected_proxy = {std::abs(proxy[pick[0]])};
    step.ls_support = selected;
    step.ls_values = coeffs;
    step.support = selected;
    step.residual_norm = residual.norm();
    out.residual_norms.push_back(step.residual_norm);
    out.trace.push_back(std::move(step));
    out.iterations = it;
  }

  out.estimate = selected.empty() ? Vector::Zero(n) : selected.embed(coeffs, n);
  out.support = selected;
  return out;
}

}  // namespace pursuit
