#pragma once

#include <Eigen/Core>

#include <stdexcept>
#include <string>

namespace pursuit {

using Index = Eigen::Index;
using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Thrown when a caller violates a documented precondition (bad sizes,
/// out-of-range parameters, mismatched lengths).
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown when a numerical routine fails on valid input, e.g. the
/// restricted least-squares iteration diverges or produces non-finite values.
class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, int iteration)
      : std::runtime_error(what), iteration_(iteration) {}

  int iteration() const noexcept { return iteration_; }

 private:
  int iteration_;
};

bool all_finite(const Vector& v);

// Throws UsageError naming `what` if v has NaN or Inf entries.
void require_finite(const Vector& v, const char* what);

}  // namespace pursuit
