#include <benchmark/benchmark.h>

#include <vector>

#include "advdiff/counterexamples.hpp"
#include "advdiff/kernels.hpp"
#include "advdiff/solver.hpp"

using namespace advdiff;

namespace {

SolveProblem gaussian_problem(std::size_t n, AdvectionScheme scheme) {
  const auto spec = make_gaussian_spec(1, 3.0, 5.0 / 12.0, 6.0);
  const auto grid = make_grid(GridKind::Line, 1, 16.0, n);
  SolveProblem pb{grid, gaussian_initial_datum(spec, grid), VelocityFieldSpec::gaussian(spec)};
  pb.advection = scheme;
  return pb;
}

}  // namespace

// Cost of one IMEX step per grid node.
static void BM_ImexStep(benchmark::State& state) {
  const auto scheme = state.range(1) ? AdvectionScheme::VanLeer : AdvectionScheme::Upwind1;
  const SolveProblem pb = gaussian_problem(static_cast<std::size_t>(state.range(0)), scheme);
  ImexIntegrator it(pb);
  SolverState st{0.0, std::vector<double>(pb.u0.values().begin(), pb.u0.values().end())};
  const double dt = it.stable_dt(0.0);
  for (auto _ : state) {
    it.step(st, dt);
    if (st.t > 0.5) st.t = 0.0;
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ImexStep)->ArgsProduct({{4096, 16384}, {0, 1}});

static void BM_SelfSimilarRun(benchmark::State& state) {
  const SelfSimilarProfile1D prof;
  const double L = 60.0;
  const auto grid = make_grid(GridKind::Line, 1, L, static_cast<std::size_t>(state.range(0)));
  SolveProblem pb{grid, ScalarField::sample(grid, [&](double x) { return selfsim_solution(prof, 0.0, x); }),
                  VelocityFieldSpec::selfsim_1d()};
  pb.t_end = 0.5;
  pb.record_steps = false;
  pb.boundary.left = [&](double t) { return selfsim_solution(prof, t, -L); };
  pb.boundary.right = [&](double t) { return selfsim_solution(prof, t, L); };
  for (auto _ : state) benchmark::DoNotOptimize(solve(pb));
}
BENCHMARK(BM_SelfSimilarRun)->Arg(2048)->Arg(4096)->Unit(benchmark::kMillisecond);
