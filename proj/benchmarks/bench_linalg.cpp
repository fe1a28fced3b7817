#include <benchmark/benchmark.h>

#include <random>

#include "sepscan/linalg.hpp"
#include "sepscan/onesided.hpp"
#include "sepscan/states.hpp"

using namespace sepscan;

static void BM_EigHermitian(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const HermitianOp h = random_hermitian(static_cast<int>(state.range(0)), rng);
  for (auto _ : state) benchmark::DoNotOptimize(eig_hermitian(h));
}
BENCHMARK(BM_EigHermitian)->Arg(4)->Arg(9)->Arg(16)->Arg(36);

static void BM_Pipeline(benchmark::State& state) {
  const DensityMatrix rho = random_full_rank(2, static_cast<int>(state.range(0)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(pipeline(rho));
}
BENCHMARK(BM_Pipeline)->Arg(2)->Arg(3)->Arg(4);
