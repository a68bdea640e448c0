#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "kacgap/gapbounds.hpp"
#include "kacgap/kspectrum.hpp"
#include "kacgap/montecarlo.hpp"
#include "kacgap/tridiag.hpp"

namespace {

void BM_KappaRow(benchmark::State& state) {
  const int n_max = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(kacgap::kspectrum::kappa_row(20, n_max));
  state.SetItemsProcessed(state.iterations() * (n_max + 1));
}
BENCHMARK(BM_KappaRow)->Arg(300)->Arg(3000);

void BM_TridiagTop(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::vector<double> d(n), e(n - 1);
  for (auto& v : d) v = u(gen);
  for (auto& v : e) v = u(gen);
  const kacgap::TridiagMatrix m(d, e);
  for (auto _ : state) benchmark::DoNotOptimize(kacgap::tridiag_top_eigenvalue(m));
}
BENCHMARK(BM_TridiagTop)->Arg(6)->Arg(100);

void BM_MonteCarloStep(benchmark::State& state) {
  kacgap::Rng rng(1);
  auto s = kacgap::montecarlo::sample_initial(kacgap::montecarlo::SimConfig::defaults(2), rng);
  for (auto _ : state) {
    s = kacgap::montecarlo::step(s, 2.0, rng).state;
    benchmark::DoNotOptimize(s);
  }
}
BENCHMARK(BM_MonteCarloStep);

void BM_LargeEllBound(benchmark::State& state) {
  const int ell = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(kacgap::gapbounds::large_ell_bound(ell));
}
BENCHMARK(BM_LargeEllBound)->Arg(70)->Arg(200);

void BM_AssembleGap(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(kacgap::gapbounds::assemble_gap());
}
BENCHMARK(BM_AssembleGap)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
