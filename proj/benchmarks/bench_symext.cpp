#include <benchmark/benchmark.h>

#include "sepscan/states.hpp"
#include "sepscan/symext.hpp"

using namespace sepscan;

static void BM_FindExtension(benchmark::State& state) {
  const DensityMatrix rho = product_mixture(2, 2, 6, 4);
  const int k = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(find_extension({rho, k, true}));
}
BENCHMARK(BM_FindExtension)->Arg(2)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);
