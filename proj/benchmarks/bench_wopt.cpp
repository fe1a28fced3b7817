#include <benchmark/benchmark.h>

#include <random>

#include "sepscan/nets.hpp"
#include "sepscan/states.hpp"
#include "sepscan/wopt.hpp"

using namespace sepscan;

static void BM_BuildNet(benchmark::State& state) {
  const double delta = 1.0 / static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(build_net(2, delta));
}
BENCHMARK(BM_BuildNet)->Arg(5)->Arg(10)->Arg(20);

static void BM_WoptMax(benchmark::State& state) {
  std::mt19937_64 rng(2);
  const int n = static_cast<int>(state.range(0));
  const HermitianOp a = random_hermitian(2 * n, rng);
  const DeltaNet net = build_net(2, 0.1);
  WoptOptions opts;
  opts.threads = 1;
  for (auto _ : state) benchmark::DoNotOptimize(wopt_max(a, 2, n, net, opts));
  state.counters["net_points"] = static_cast<double>(net.size());
}
BENCHMARK(BM_WoptMax)->Arg(2)->Arg(3)->Arg(4);
