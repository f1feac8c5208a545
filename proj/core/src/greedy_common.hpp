#pragma once

#include <string>

#include "pursuit/greedy.hpp"
#include "pursuit/linalg.hpp"

namespace pursuit::detail {

void require_measurements(const SenseOperator& op, const Vector& u, const char* who);

// restricted_least_squares with the calling algorithm and its iteration
// prepended to any SolverError.
LsResult refit(const SenseOperator& op, const SupportSet& support, const Vector& u,
               const LsOptions& ls, const char* who, int iteration);

}  // namespace pursuit::detail
