#include <benchmark/benchmark.h>

#include <lieiso/group_model.hpp>
#include <lieiso/symmetry.hpp>

using namespace lieiso;

namespace {

struct Fixture {
  LieAlgebra3 alg = make_algebra_c(0.0);
  InnerProduct g = metric_from_table(alg, MetricParams::g_mu_nu(1.5, 2.0));
};

}  // namespace

static void BM_Curvature(benchmark::State& state) {
  const Fixture f;
  for (auto _ : state) {
    benchmark::DoNotOptimize(compute_curvature(f.alg, f.g));
  }
}
BENCHMARK(BM_Curvature)->Unit(benchmark::kMicrosecond);

static void BM_SingerIsotropy(benchmark::State& state) {
  const Fixture f;
  const CurvatureData curv = compute_curvature(f.alg, f.g);
  const bool prefilter = state.range(0) != 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(singer_isotropy(f.g, curv, {}, prefilter));
  }
}
BENCHMARK(BM_SingerIsotropy)->ArgName("prefilter")->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);

static void BM_IndexOfSymmetry(benchmark::State& state) {
  const Fixture f;
  for (auto _ : state) {
    benchmark::DoNotOptimize(index_of_symmetry(f.alg, f.g));
  }
}
BENCHMARK(BM_IndexOfSymmetry)->Unit(benchmark::kMicrosecond);

static void BM_NumericRicci(benchmark::State& state) {
  const Fixture f;
  const GroupPoint p(0.3, -0.2, 0.4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(numeric_ricci(f.alg.family(), f.g, p));
  }
}
BENCHMARK(BM_NumericRicci)->Unit(benchmark::kMicrosecond);

static void BM_ModuliScan(benchmark::State& state) {
  GridSpec grid;
  grid.n_mu = static_cast<int>(state.range(0));
  grid.n_nu = 5;
  grid.threads = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(scan_moduli(FamilyTag::c(0.25), grid));
  }
  state.SetItemsProcessed(state.iterations() * grid.n_mu * grid.n_nu);
}
BENCHMARK(BM_ModuliScan)->ArgName("n_mu")->RangeMultiplier(2)->Range(4, 32)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
