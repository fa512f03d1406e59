#include <benchmark/benchmark.h>

#include "brown/circular_sum.hpp"
#include "brown/haar_sum.hpp"
#include "brown/measures.hpp"
#include "brown/rmt_lab.hpp"

using namespace brown;

namespace {

measures::OperatorModel u2() { return measures::FiniteNormal{{1.0, -1.0}, {0.5, 0.5}}; }

void BM_HaarDensityPoint(benchmark::State& st) {
  const haar::HaarSumProblem p(u2());
  for (auto _ : st) benchmark::DoNotOptimize(haar::density_general(p, cplx(0.7, 0.3)));
}
BENCHMARK(BM_HaarDensityPoint);

void BM_HaarArcsinePoint(benchmark::State& st) {
  const haar::HaarSumProblem p(measures::NormalSelfAdjoint{measures::Arcsine{}});
  for (auto _ : st) benchmark::DoNotOptimize(haar::density_general(p, cplx(0.5, 0.3)));
}
BENCHMARK(BM_HaarArcsinePoint);

void BM_HaarGrid(benchmark::State& st) {
  const haar::HaarSumProblem p(u2());
  const auto g = numerics::GridSpec::square(1.8, int(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(haar::density_grid(p, g, 1).total_mass);
  st.SetItemsProcessed(st.iterations() * std::int64_t(g.size()));
}
BENCHMARK(BM_HaarGrid)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_CircularFlowLog(benchmark::State& st) {
  const circular::CircularFlowProblem p(measures::TwoByTwo::nilpotent(1.0), 1.0);
  const auto route = st.range(0) ? circular::VRoute::Bisection : circular::VRoute::Auto;
  for (auto _ : st) benchmark::DoNotOptimize(circular::log_fk_flow(p, cplx(0.6, 0.2), route));
}
BENCHMARK(BM_CircularFlowLog)->Arg(0)->Arg(1);

void BM_EllipticFlowLaplacian(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(circular::elliptic_density_flow_laplacian(1.0, 0.25, cplx(0.4, 0.1)));
}
BENCHMARK(BM_EllipticFlowLaplacian)->Unit(benchmark::kMicrosecond);

void BM_Eigenvalues(benchmark::State& st) {
  rmt::Rng rng(1);
  const int n = int(st.range(0));
  const auto m = rmt::sample_model(*rmt::ensembles::ginibre(n, 1.0), rng);
  for (auto _ : st) benchmark::DoNotOptimize(rmt::eigenvalues(m).size());
}
BENCHMARK(BM_Eigenvalues)->Arg(50)->Arg(150)->Unit(benchmark::kMillisecond);

void BM_RTransform(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(measures::r_transform(measures::Arcsine{}, 16)[2]);
}
BENCHMARK(BM_RTransform);

}  // namespace
BENCHMARK_MAIN();
