#pragma once

#include <fftw3.h>

#include "pursuit/types.hpp"

namespace pursuit::detail {

// Orthonormal DCT-II / DCT-III pair of length n backed by FFTW r2r plans.
// Plans are created and destroyed under a global lock (the FFTW planner is
// not reentrant); execution uses the new-array interface and is thread-safe.
class DctPlan {
 public:
  explicit DctPlan(Index n);
  ~DctPlan();
  DctPlan(const DctPlan&) = delete;
  DctPlan& operator=(const DctPlan&) = delete;

  Index size() const { return n_; }

  // c_k = a_k sum_j x_j cos(pi (2j + 1) k / 2n), a_0 = sqrt(1/n), a_k = sqrt(2/n).
  Vector forward(const Vector& x) const;
  // Transpose of forward (its inverse).
  Vector inverse(const Vector& c) const;

 private:
  Index n_;
  fftw_plan dct2_ = nullptr;
  fftw_plan dct3_ = nullptr;
};

}  // namespace pursuit::detail
