#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "advdiff/counterexamples.hpp"
#include "advdiff/kernels.hpp"
#include "advdiff/solver.hpp"

using namespace advdiff;
using doctest::Approx;

namespace {
constexpr double pi = std::numbers::pi;

double sup_diff(const ScalarField& a, const ScalarField& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

ScalarField gaussian(const SpatialGrid& g, double t, double shift = 0.0) {
  const HeatKernelQuery q(t, 1);
  return ScalarField::sample(g, [&](double x) { return heat_kernel(q, x - shift); });
}
}  // namespace

TEST_CASE("heat kernel queries") {
  CHECK(heat_kernel(HeatKernelQuery(1.0, 1), 0.0) == Approx(1.0 / std::sqrt(4.0 * pi)));
  CHECK(heat_kernel(HeatKernelQuery(0.25, 1, KernelDirection::BackwardTo1), 0.0) ==
        Approx(1.0 / std::sqrt(3.0 * pi)));
  CHECK(heat_kernel(HeatKernelQuery(2.0, 3), 1.0) == Approx(std::pow(8.0 * pi, -1.5) * std::exp(-0.125)));
  CHECK_THROWS_AS(HeatKernelQuery(0.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(HeatKernelQuery(1.0, 1, KernelDirection::BackwardTo1), std::invalid_argument);
}

TEST_CASE("gradient norm closed forms in one dimension") {
  // ||d_x G(t)||_1 = 2 G(t, 0) = 1/sqrt(pi t);  ||d_x G(t)||_2^2 = sqrt(2 pi) / (16 pi) t^{-3/2}
  for (double t : {0.25, 0.5, 1.0, 2.0}) {
    CHECK(grad_heat_kernel_lq_norm(t, 1.0, 1) == Approx(1.0 / std::sqrt(pi * t)).epsilon(1e-9));
    CHECK(grad_heat_kernel_lq_norm(t, 2.0, 1) ==
          Approx(std::sqrt(std::sqrt(2.0 * pi) / (16.0 * pi) * std::pow(t, -1.5))).epsilon(1e-9));
  }
  // d = 3, q* = 1: int |x|/(2t) G dx = E|X| / (2t), X ~ N(0, 2t I_3): E|X| = sqrt(2t) * 2 sqrt(2/pi)
  CHECK(grad_heat_kernel_constant(3, 1.0) == Approx(std::sqrt(2.0) * 2.0 * std::sqrt(2.0 / pi) / 2.0).epsilon(1e-9));
}

TEST_CASE("gradient norm exponent arithmetic") {
  CHECK(grad_heat_kernel_exponent(1, 2.0) == Approx(-0.75));
  CHECK(grad_heat_kernel_exponent(2, 1.5) == Approx((2 - 4.5) / 3.0));
  CHECK(grad_heat_kernel_exponent(3, 1.0) == Approx(-0.5));
}

TEST_CASE("heat convolution semigroup and mass") {
  const auto g = make_grid(GridKind::Line, 1, 20.0, 4001);
  const auto f = gaussian(g, 0.3, 1.0);
  const auto once = heat_convolve(f, 0.2);
  CHECK(sup_diff(once, gaussian(g, 0.5, 1.0)) < 1e-6);
  CHECK(sup_diff(heat_convolve(once, 0.4), heat_convolve(f, 0.6)) < 1e-6);
  CHECK(lp_norm(once, 1.0) == Approx(lp_norm(f, 1.0)).epsilon(1e-8));
  const ScalarField zero(g);
  CHECK(heat_convolve(zero, 0.1).max_abs() == 0.0);
}

TEST_CASE("Duhamel step bound") {
  const DuhamelStep s = duhamel_timestep_bound(1.0, 4.0, 4.0, 1);
  CHECK(s.alpha == Approx(-5.0 / 6.0));
  CHECK(s.r_star == Approx(4.0 / 3.0));
  CHECK(s.q_star == Approx(4.0 / 3.0));
  CHECK(s.beta > 0.0);
  CHECK(s.beta <= 1.0);
  CHECK(s.iterations == static_cast<long>(std::floor(1.0 / s.beta)));
  CHECK(s.overall_constant == Approx(std::pow(2.0, s.iterations + 1)));
  // beta solves K b beta^{(alpha+1)/r*} = 1
  CHECK(s.kernel_constant * std::pow(s.beta, (s.alpha + 1.0) / s.r_star) == Approx(1.0));
  CHECK(duhamel_timestep_bound(2.0, 4.0, 4.0, 1).beta < s.beta);
  CHECK(duhamel_timestep_bound(1e-6, 4.0, 4.0, 1).clamped);
  CHECK_THROWS_AS(duhamel_timestep_bound(1.0, 2.0, 2.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(duhamel_timestep_bound(0.0, 4.0, 4.0, 1), std::invalid_argument);
}

TEST_CASE("mild solution with zero drift is the heat flow") {
  const auto g = make_grid(GridKind::Line, 1, 10.0, 1001);
  const auto u0 = gaussian(g, 0.25, 0.3);
  const MildSolution m = mild_solve(u0, VelocityFieldSpec::zero(1), 0.1, 11, 1);
  CHECK(sup_diff(m.final, heat_convolve(u0, 0.1)) < 1e-8);
  CHECK(lp_norm(m.final, 1.0) == Approx(lp_norm(u0, 1.0)).epsilon(1e-8));
  CHECK(m.series.size() == 3);
}

TEST_CASE("mild solution agrees with the finite-volume solver") {
  const auto g = make_grid(GridKind::Line, 1, 10.0, 1001);
  const auto u0 = gaussian(g, 0.25, 0.3);
  const auto b = VelocityFieldSpec::compact_bump(2.0, 1.0);
  const MildSolution m = mild_solve(u0, b, 0.05, 26, 8);
  SolveProblem pb{g, u0, b};
  pb.t_end = 0.05;
  const SolveResult r = solve(pb);
  std::vector<double> diff(g.size());
  for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = m.final[i] - r.final[i];
  CHECK(lp_norm(g, diff, 2.0) / lp_norm(r.final, 2.0) < 0.02);
  CHECK(m.last_difference < 1e-4);
}

TEST_CASE("mild solution rejects bad inputs") {
  const auto g = make_grid(GridKind::Line, 1, 10.0, 101);
  const auto u0 = gaussian(g, 0.25);
  CHECK_THROWS(mild_solve(u0, VelocityFieldSpec::selfsim_1d(), 1.0, 11));
  CHECK_THROWS(mild_solve(u0, VelocityFieldSpec::zero(1), 0.1, 1));
  CHECK_THROWS(mild_solve(u0, VelocityFieldSpec::zero(1), 0.1, 11, 0));
}
