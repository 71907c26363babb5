#include <benchmark/benchmark.h>

#include "advdiff/counterexamples.hpp"
#include "advdiff/kernels.hpp"

using namespace advdiff;

static void BM_HeatConvolve(benchmark::State& state) {
  const auto grid = make_grid(GridKind::Line, 1, 10.0, static_cast<std::size_t>(state.range(0)));
  const HeatKernelQuery q(0.25, 1);
  const auto f = ScalarField::sample(grid, [&](double x) { return heat_kernel(q, x); });
  for (auto _ : state) benchmark::DoNotOptimize(heat_convolve(f, 0.1));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_HeatConvolve)->RangeMultiplier(2)->Range(256, 4096)->Complexity();

static void BM_GradKernelNorm(benchmark::State& state) {
  double t = 0.25;
  for (auto _ : state) {
    benchmark::DoNotOptimize(grad_heat_kernel_lq_norm(t, 1.5, 2));
    t = t < 2.0 ? t * 1.01 : 0.25;
  }
}
BENCHMARK(BM_GradKernelNorm);

static void BM_MildSolve(benchmark::State& state) {
  const auto grid = make_grid(GridKind::Line, 1, 10.0, static_cast<std::size_t>(state.range(0)));
  const HeatKernelQuery q(0.25, 1);
  const auto u0 = ScalarField::sample(grid, [&](double x) { return heat_kernel(q, x - 0.3); });
  const auto b = VelocityFieldSpec::compact_bump(2.0, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(mild_solve(u0, b, 0.05, 26, 8));
}
BENCHMARK(BM_MildSolve)->Arg(501)->Arg(2001)->Unit(benchmark::kMillisecond);

static void BM_RadialProfileEval(benchmark::State& state) {
  const SelfSimilarProfileRadial p(static_cast<int>(state.range(0)));
  double r = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(p(r));
    r = r < 20.0 ? r + 0.013 : 0.0;
  }
}
BENCHMARK(BM_RadialProfileEval)->Arg(2)->Arg(3)->Arg(5);

static void BM_GaussianSourceNorm(benchmark::State& state) {
  const auto spec = make_gaussian_spec(1, 3.0, 5.0 / 12.0, 6.0);
  for (auto _ : state) benchmark::DoNotOptimize(gaussian_source_l1(spec));
}
BENCHMARK(BM_GaussianSourceNorm)->Unit(benchmark::kMillisecond);
