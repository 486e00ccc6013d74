#include <benchmark/benchmark.h>

#include <map>

#include "stabgap/bounds.hpp"
#include "stabgap/davies.hpp"

using namespace stabgap;

namespace {

const StabilizerModel& toric22() {
  static StabilizerModel m = StabilizerModel::build(toric_code(2, 2, Rational(1)));
  return m;
}

const StabilizerModel& ising(int n) {
  static std::map<int, StabilizerModel> cache;
  auto it = cache.find(n);
  if (it == cache.end())
    it = cache.emplace(n, StabilizerModel::build(ising_chain(n, Rational(1)))).first;
  return it->second;
}

void BM_DirichletBlockToric(benchmark::State& state) {
  auto ctx = DaviesContext::make(toric22(), Bath::metropolis(1.0));
  PauliWord rep = toric22().coset_rep(parse_pauli("XZIIIIII"));
  for (auto _ : state) benchmark::DoNotOptimize(dirichlet_block(ctx, rep));
}
BENCHMARK(BM_DirichletBlockToric);

void BM_VarianceBlockToric(benchmark::State& state) {
  auto ctx = DaviesContext::make(toric22(), Bath::metropolis(1.0));
  PauliWord rep = toric22().coset_rep(parse_pauli("XZIIIIII"));
  for (auto _ : state) benchmark::DoNotOptimize(variance_block(ctx, rep));
}
BENCHMARK(BM_VarianceBlockToric);

void BM_SpectralGapIsing4(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(spectral_gap(ising(4), Bath::metropolis(1.0)));
}
BENCHMARK(BM_SpectralGapIsing4);

void BM_SpectralGapToric22(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(spectral_gap(toric22(), Bath::metropolis(1.0)));
}
BENCHMARK(BM_SpectralGapToric22)->Unit(benchmark::kMillisecond);

void BM_ExactBarrierIsing4(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(generalized_barrier_exact(ising(4)));
}
BENCHMARK(BM_ExactBarrierIsing4)->Unit(benchmark::kMillisecond);

void BM_ExactCostSingleTargetIsing6(benchmark::State& state) {
  PauliWord target = parse_pauli("XXXXXX");
  for (auto _ : state) benchmark::DoNotOptimize(exact_energy_cost(ising(6), target));
}
BENCHMARK(BM_ExactCostSingleTargetIsing6)->Unit(benchmark::kMillisecond);

void BM_CssBarrierToric22(benchmark::State& state) {
  auto fam = PathFamily::css_string(toric_layout(2, 2));
  for (auto _ : state) benchmark::DoNotOptimize(heuristic_barrier(toric22(), fam));
}
BENCHMARK(BM_CssBarrierToric22)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
