#include <benchmark/benchmark.h>

#include "chow/bielliptic.hpp"
#include "chow/chow_ring.hpp"
#include "chow/invariant.hpp"

namespace {

void BM_PsiExpand(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(chow::psi_expand(n, 1));
}
BENCHMARK(BM_PsiExpand)->DenseRange(6, 10, 2);

void BM_MulDivisors(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const chow::TautClass b = chow::boundary_sum(n);
  for (auto _ : state) benchmark::DoNotOptimize(chow::mul(b, b));
}
BENCHMARK(BM_MulDivisors)->Arg(6)->Arg(7)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_PairingTableCold(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  chow::set_pairing_cache_enabled(false);
  for (auto _ : state) benchmark::DoNotOptimize(chow::pairing_table(n, 2));
  chow::set_pairing_cache_enabled(true);
}
BENCHMARK(BM_PairingTableCold)->Arg(7)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_Kappa(benchmark::State& state) {
  const int a = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(chow::kappa_class(8, a));
}
BENCHMARK(BM_Kappa)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_I8Invariant(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(chow::i8_inv());
}
BENCHMARK(BM_I8Invariant)->Unit(benchmark::kMillisecond)->Iterations(2);

}  // namespace

BENCHMARK_MAIN();
