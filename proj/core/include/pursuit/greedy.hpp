#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "pursuit/linalg.hpp"
#include "pursuit/sensing.hpp"
#include "pursuit/support.hpp"
#include "pursuit/types.hpp"

namespace pursuit {

enum class HaltReason {
  SparsityReached,  // OMP after s picks; ROMP once |I| >= 2s
  ResidualSmall,
  MaxIterations,
  SupportCap,       // ROMP: growing I further would exceed m
  ProxyZero,        // no nonzero proxy coordinate left to select
  SupportStalled,   // CoSaMP: support unchanged and residual no longer shrinking
};

std::string_view to_string(HaltReason h);

/// Per-iteration record, filled by all three algorithms.
///
///            identified        selected            ls_support
///   OMP      {argmax}          {argmax}            I
///   ROMP     J                 J0                  I
///   CoSaMP   Omega             T (merged)          T
struct IterationTrace {
  SupportSet identified;
  SupportSet selected;
  std::vector<double> selected_proxy;  // |y| on `selected`, same order
  SupportSet ls_support;
  Vector ls_values;                    // LS solution aligned with ls_support
  SupportSet support;                  // support of the iterate afterwards
  double residual_norm = 0.0;
};

struct RecoveryResult {
  Vector estimate;
  SupportSet support;
  int iterations = 0;
  std::vector<double> residual_norms;
  std::uint64_t matvecs = 0;
  HaltReason halted_by = HaltReason::MaxIterations;
  std::vector<IterationTrace> trace;
};

/// Orthogonal matching pursuit: s rounds of "add the largest proxy
/// coordinate, refit by least squares". Indices already in I are not
/// candidates. Requires 1 <= s <= m.
RecoveryResult omp(const SenseOperator& op, const Vector& u, Index s,
                   const LsOptions& ls = {});

/// Regularization step of ROMP. Given the proxy values on J (all nonzero),
/// returns positions into `values` of the comparable subset
/// (max |y| <= 2 min |y|) with the largest energy, sorted ascending.
///
/// Sorting by decreasing magnitude makes every optimal subset a contiguous
/// window, so a two-pointer sweep over windows is exact. Equal energies go
/// to the window whose largest element has the lower position.
std::vector<Index> romp_regularize(std::span<const double> values);

/// Index-set form: `proxy` is the full observation vector, `candidates` is J.
SupportSet romp_regularize(const Vector& proxy, const SupportSet& candidates);

struct RompOptions {
  LsOptions ls;
  // Halt once |r| <= residual_tol * |u|.
  double residual_tol = 1e-9;
};

/// Regularized OMP. At most s rounds; stops early when |I| >= 2s, when the
/// residual is negligible, or when the proxy vanishes off I. Output support
/// is < 3s. Requires s >= 1 and s <= m.
RecoveryResult romp(const SenseOperator& op, const Vector& u, Index s,
                    const RompOptions& options = {});

struct CosampOptions {
  double eta = 0.0;  // absolute residual target
  int max_iter = 100;
  // Stall: same support as the previous iterate and the residual shrank by
  // less than this fraction.
  double stall_tol = 1e-6;
  LsOptions ls;
};

/// Compressive sampling matching pursuit; the estimate is at most s-sparse.
/// Requires s >= 1 and 3s <= m.
RecoveryResult cosamp(const SenseOperator& op, const Vector& u, Index s,
                      const CosampOptions& options = {});

}  // namespace pursuit
