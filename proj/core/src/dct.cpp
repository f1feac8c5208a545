#include "dct.hpp"

#include <cmath>
#include <memory>
#include <mutex>

namespace pursuit::detail {
namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwFree {
  void operator()(double* p) const { fftw_free(p); }
};
using FftwBuffer = std::unique_ptr<double[], FftwFree>;

FftwBuffer allocate(Index n) {
  auto* p = fftw_alloc_real(static_cast<std::size_t>(n));
  if (p == nullptr) throw std::bad_alloc();
  return FftwBuffer(p);
}

}  // namespace

DctPlan::DctPlan(Index n) : n_(n) {
  if (n < 1) throw UsageError("DctPlan: length must be positive");
  auto in = allocate(n);
  auto out = allocate(n);
  std::lock_guard lock(planner_mutex());
  const int len = static_cast<int>(n);
  dct2_ = fftw_plan_r2r_1d(len, in.get(), out.get(), FFTW_REDFT10, FFTW_ESTIMATE);
  dct3_ = fftw_plan_r2r_1d(len, in.get(), out.get(), FFTW_REDFT01, FFTW_ESTIMATE);
  if (dct2_ == nullptr || dct3_ == nullptr) throw std::runtime_error("FFTW planning failed");
}

DctPlan::~DctPlan() {
  std::lock_guard lock(planner_mutex());
  if (dct2_ != nullptr) fftw_destroy_plan(dct2_);
  if (dct3_ != nullptr) fftw_destroy_plan(dct3_);
}

Vector DctPlan::forward(const Vector& x) const {
  auto in = allocate(n_);
  auto out = allocate(n_);
  for (Index j = 0; j < n_; ++j) in[j] = x[j];
  // REDFT10: Y_k = 2 sum_j x_j cos(pi (2j + 1) k / 2n)
  fftw_execute_r2r(dct2_, in.get(), out.get());
  const double a0 = std::sqrt(1.0 / static_cast<double>(n_)) / 2.0;
  const double ak = std::sqrt(2.0 / static_cast<double>(n_)) / 2.0;
  Vector c(n_);
  c[0] = a0 * out[0];
  for (Index k = 1; k < n_; ++k) c[k] = ak * out[k];
  return c;
}

Vector DctPlan::inverse(const Vector& c) const {
  auto in = allocate(n_);
  auto out = allocate(n_);
  // REDFT01: Y_j = X_0 + 2 sum_{k>=1} X_k cos(pi k (2j + 1) / 2n)
  in[0] = std::sqrt(1.0 / static_cast<double>(n_)) * c[0];
  const double ak = std::sqrt(2.0 / static_cast<double>(n_)) / 2.0;
  for (Index k = 1; k < n_; ++k) in[k] = ak * c[k];
  fftw_execute_r2r(dct3_, in.get(), out.get());
  Vector x(n_);
  for (Index j = 0; j < n_; ++j) x[j] = out[j];
  return x;
}

}  // namespace pursuit::detail
