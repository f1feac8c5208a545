#include <benchmark/benchmark.h>

#include "pursuit/linalg.hpp"
#include "pursuit/sensing.hpp"
#include "pursuit/signals.hpp"

namespace {

using namespace pursuit;

void forward(benchmark::State& state, Ensemble ensemble) {
  const Index n = state.range(0);
  const SenseOperator op = make_operator(ensemble, n / 2, n, 1);
  const Vector x = gen_sparse(n, 16, 2).values;
  for (auto _ : state) benchmark::DoNotOptimize(op.forward(x));
  state.SetComplexityN(n);
}

void adjoint(benchmark::State& state, Ensemble ensemble) {
  const Index n = state.range(0);
  const SenseOperator op = make_operator(ensemble, n / 2, n, 1);
  const Vector v = op.forward(gen_sparse(n, 16, 2).values);
  for (auto _ : state) benchmark::DoNotOptimize(op.adjoint(v));
  state.SetComplexityN(n);
}

BENCHMARK_CAPTURE(forward, gaussian, Ensemble::Gaussian)->RangeMultiplier(2)->Range(256, 4096);
BENCHMARK_CAPTURE(forward, dct, Ensemble::PartialDCT)->RangeMultiplier(2)->Range(256, 4096);
BENCHMARK_CAPTURE(adjoint, gaussian, Ensemble::Gaussian)->RangeMultiplier(2)->Range(256, 4096);
BENCHMARK_CAPTURE(adjoint, dct, Ensemble::PartialDCT)->RangeMultiplier(2)->Range(256, 4096);

void restricted_ls(benchmark::State& state, LsMethod method) {
  const Index k = state.range(0);
  const SenseOperator op = make_operator(Ensemble::Gaussian, 256, 512, 3);
  const Signal x = gen_sparse(512, k, 4);
  const Vector u = op.forward(x.values);
  const SupportSet support = *x.true_support;
  LsOptions opts;
  opts.method = method;
  opts.max_iter = 500;
  for (auto _ : state) benchmark::DoNotOptimize(restricted_least_squares({op, support, u}, opts));
}

BENCHMARK_CAPTURE(restricted_ls, cg, LsMethod::ConjugateGradient)->Arg(8)->Arg(32)->Arg(64);
BENCHMARK_CAPTURE(restricted_ls, richardson, LsMethod::Richardson)->Arg(8)->Arg(32)->Arg(64);

}  // namespace
