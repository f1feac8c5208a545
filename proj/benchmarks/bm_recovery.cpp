#include <benchmark/benchmark.h>

#include "pursuit/greedy.hpp"
#include "pursuit/signals.hpp"

namespace {

using namespace pursuit;

struct Instance {
  SenseOperator op;
  Vector u;
};

Instance instance(Ensemble ensemble, Index n, Index s) {
  SenseOperator op = make_operator(ensemble, n / 2, n, 5);
  Vector u = op.forward(gen_sparse(n, s, 6).values);
  return {std::move(op), std::move(u)};
}

void bm_omp(benchmark::State& state) {
  const Index s = state.range(0);
  const Instance in = instance(Ensemble::Gaussian, 256, s);
  for (auto _ : state) benchmark::DoNotOptimize(omp(in.op, in.u, s));
}

void bm_romp(benchmark::State& state) {
  const Index s = state.range(0);
  const Instance in = instance(Ensemble::Gaussian, 256, s);
  for (auto _ : state) benchmark::DoNotOptimize(romp(in.op, in.u, s));
}

void bm_cosamp(benchmark::State& state, Ensemble ensemble) {
  const Index n = state.range(0);
  const Index s = state.range(1);
  const Instance in = instance(ensemble, n, s);
  CosampOptions opts;
  opts.eta = 1e-8 * in.u.norm();
  for (auto _ : state) benchmark::DoNotOptimize(cosamp(in.op, in.u, s, opts));
}

BENCHMARK(bm_omp)->Arg(4)->Arg(8)->Arg(16);
BENCHMARK(bm_romp)->Arg(4)->Arg(8)->Arg(16);
BENCHMARK_CAPTURE(bm_cosamp, gaussian, Ensemble::Gaussian)->Args({256, 8})->Args({1024, 16});
BENCHMARK_CAPTURE(bm_cosamp, dct, Ensemble::PartialDCT)
    ->Args({256, 8})
    ->Args({1024, 16})
    ->Args({8192, 32});

}  // namespace
