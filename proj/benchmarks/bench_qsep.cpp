#include <benchmark/benchmark.h>

#include <random>

#include "sepscan/qsep.hpp"

using namespace sepscan;

static void BM_VerifyCertificate(benchmark::State& state) {
  std::mt19937_64 rng(5);
  const int p = static_cast<int>(state.range(0));
  const auto exact = random_rational_decomposition(2, 3, 12, 10, rng);
  const QMatrix sigma = certificate_sigma(2, 3, exact);
  const Rational delta = Rational(216) * (pow2(-(p - 8)) + pow2(-(p - 5)));
  const QsepInstance inst = reduce_wmem_to_qsep(2, 3, sigma, delta);
  const QsepCertificate cert = truncate_decomposition(2, 3, exact, p);
  for (auto _ : state) benchmark::DoNotOptimize(verify_certificate(inst, cert));
}
BENCHMARK(BM_VerifyCertificate)->Arg(12)->Arg(20)->Unit(benchmark::kMillisecond);
