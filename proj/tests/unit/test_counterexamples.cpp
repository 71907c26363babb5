#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "advdiff/counterexamples.hpp"
#include "advdiff/cutoff.hpp"

using namespace advdiff;
using doctest::Approx;

namespace {

// Independent second-order check of alpha u + y u'/2 + (b u)' - u'' on the 1D profile.
double residual_1d(const SelfSimilarProfile1D& p, double y) {
  const double h = 1e-4;
  auto u = [&](double s) { return p(s).u; };
  auto bu = [&](double s) { return p(s).b * p(s).u; };
  const double du = (u(y + h) - u(y - h)) / (2 * h);
  const double ddu = (u(y + h) - 2 * u(y) + u(y - h)) / (h * h);
  return SelfSimilarProfile1D::alpha * u(y) + 0.5 * y * du + (bu(y + h) - bu(y - h)) / (2 * h) - ddu;
}

}  // namespace

TEST_CASE("1D profile closed-form values at the junction") {
  const SelfSimilarProfile1D p;
  const double U2 = std::pow(2.0, 0.25) + (3.0 / 16.0) * std::pow(2.0, -1.75);
  CHECK(p(2.0).U == Approx(U2).epsilon(1e-12));
  CHECK(U2 == Approx(1.2449512).epsilon(1e-7));
  CHECK(p(2.0).b == Approx(0.671512).epsilon(1e-6));
  // Value, first and second derivatives match from both sides.
  const double e = 1e-9;
  CHECK(p(2.0 - e).U == Approx(p(2.0 + e).U).epsilon(1e-7));
  CHECK(p(2.0 - e).u == Approx(p(2.0 + e).u).epsilon(1e-7));
  CHECK(p(2.0 - e).du == Approx(p(2.0 + e).du).epsilon(1e-6));
  CHECK(p(2.0 - e).b == Approx(p(2.0 + e).b).epsilon(1e-6));
}

TEST_CASE("1D profile symmetry and primitive relation") {
  const SelfSimilarProfile1D p;
  const double h = 1e-6;
  for (double y : {0.3, 1.0, 1.9, 2.5, 7.0, 40.0}) {
    CHECK(p(-y).U == Approx(-p(y).U));
    CHECK(p(-y).u == Approx(p(y).u));
    CHECK(p(-y).b == Approx(-p(y).b));
    CHECK(p(y).u == Approx((p(y + h).U - p(y - h).U) / (2 * h)).epsilon(1e-6));
    CHECK(p(y).du == Approx((p(y + h).u - p(y - h).u) / (2 * h)).epsilon(1e-5));
  }
  CHECK(p(0.0).U == 0.0);
  CHECK(p(0.0).b == 0.0);
}

TEST_CASE("1D profile outer drift closed form") {
  const SelfSimilarProfile1D p;
  for (double y : {2.5, 4.0, 10.0}) {
    const double expected = 231.0 / (4.0 * y * y * y * (16.0 - 21.0 / (y * y)));
    CHECK(p(y).b == Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("1D profile solves its ODE (independent stencil)") {
  const SelfSimilarProfile1D p;
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> y(-15.0, 15.0);
  for (int i = 0; i < 200; ++i) {
    const double yi = y(rng);
    if (std::abs(std::abs(yi) - 2.0) < 1e-3) continue;
    CHECK(std::abs(residual_1d(p, yi)) < 1e-5);
  }
}

TEST_CASE("1D profile is positive with polynomial tail decay") {
  const SelfSimilarProfile1D p;
  for (double y = -50.0; y <= 50.0; y += 0.01) CHECK(p(y).u > 0.0);
  // u ~ y^{-3/4} / 4 for large y
  CHECK(p(1e6).u * std::pow(1e6, 0.75) == Approx(0.25).epsilon(1e-6));
}

TEST_CASE("radial profile parameters") {
  for (int d : {2, 3, 5}) {
    const SelfSimilarProfileRadial p(d);
    CHECK(p.M() == Approx(std::sqrt(2.0 * d) + 1.0));
    CHECK(p.gamma() == Approx(d - 1.25));
    CHECK(p.alpha() == Approx(d / 2.0 - 0.125));
    CHECK(p.C() == Approx((d - 0.25) / 4.0));
    // Oracle for L: brute-force minimum of U_out(r)/r on [M-1, M].
    double lmin = 1e300;
    for (int i = 0; i <= 200000; ++i) {
      const double r = p.M() - 1.0 + i / 200000.0;
      lmin = std::min(lmin, p.outer_U(r) / r);
    }
    CHECK(p.L() == Approx(lmin).epsilon(1e-9));
    CHECK(p(0.0).u == Approx(p.L() * d));
  }
  CHECK(SelfSimilarProfileRadial(3).M() == Approx(std::sqrt(6.0) + 1.0));
  CHECK(radial_profile_constant(2) == Approx(0.15333887).epsilon(1e-7));
  CHECK_THROWS_AS(SelfSimilarProfileRadial(1), std::invalid_argument);
}

TEST_CASE("radial profile matches the outer closed form beyond M") {
  const SelfSimilarProfileRadial p(3);
  for (double r : {p.M(), p.M() + 0.5, 10.0, 80.0}) {
    CHECK(p(r).U == Approx(p.outer_U(r)));
    CHECK(p(r).u == Approx(p.outer_u(r)));
    CHECK(p(r).b == Approx(p.outer_b(r)));
  }
  // u = r^{1-d} (r^{d-1} U)' = U' + (d-1) U / r on the outer region.
  const double h = 1e-6, r = 6.0;
  const double dU = (p.outer_U(r + h) - p.outer_U(r - h)) / (2 * h);
  CHECK(p.outer_u(r) == Approx(dU + 2.0 * p.outer_U(r) / r).epsilon(1e-7));
}

TEST_CASE("radial profiles solve their ODE away from the origin") {
  for (int d : {2, 3, 5}) {
    const SelfSimilarProfileRadial p(d);
    for (double r = 0.05; r < 30.0; r += 0.0173) CHECK(std::abs(profile_ode_residual(p, r, 1e-3)) < 1e-6);
  }
}

TEST_CASE("self-similar solutions obey the parabolic scaling") {
  const SelfSimilarProfile1D p;
  for (double t : {0.0, 0.5, 0.9, 0.99})
    for (double x : {-3.0, 0.1, 2.0, 9.0}) {
      const double s = 1.0 - t;
      CHECK(selfsim_solution(p, t, x) == Approx(std::pow(s, -0.375) * p(x / std::sqrt(s)).u));
      CHECK(selfsim_velocity(p, t, x) == Approx(std::pow(s, -0.5) * p(x / std::sqrt(s)).b));
    }
  CHECK_THROWS_AS(selfsim_solution(p, 1.0, 0.0), std::domain_error);
  const SelfSimilarProfileRadial pr(3);
  CHECK(selfsim_solution(pr, 0.75, 1.0) == Approx(std::pow(0.25, -pr.alpha()) * pr(2.0).u));
}

TEST_CASE("self-similar L2 norm follows (1-t)^{-1/8}") {
  const SelfSimilarProfile1D p;
  const auto grid = make_grid(GridKind::Line, 1, 100.0, 200001);
  const double n0 = selfsim_lp_norm(p, 0.0, 2.0, grid);
  for (double t : {0.5, 0.9, 0.99}) CHECK(selfsim_lp_norm(p, t, 2.0, grid) / n0 == Approx(std::pow(1.0 - t, -0.125)).epsilon(1e-6));
}

TEST_CASE("Gaussian construction exponents") {
  CHECK(beta_threshold(2, 2, 1) == Approx(1.0 / 3.0));
  CHECK(choose_beta(2, 2, 1) == Approx(5.0 / 12.0));
  CHECK(beta_threshold(1, 1, 1) == Approx(0.0));
  CHECK_THROWS_AS(choose_beta(4, 2, 1), std::invalid_argument);
  // ||b(t)||_q ~ (1-t)^{(beta d + q(beta - 1))/q}
  CHECK(gaussian_b_decay_exponent(0.45, 1, 1.0) == Approx(0.45 + 0.45 - 1.0));
}

TEST_CASE("Gaussian construction validation") {
  CHECK_NOTHROW(make_gaussian_spec(1, 4.0, 0.45, 6.0));
  CHECK_THROWS(make_gaussian_spec(1, 4.0, 0.5, 6.0));
  CHECK_THROWS(make_gaussian_spec(1, 4.0, 0.0, 6.0));
  CHECK_THROWS(make_gaussian_spec(2, 1.5, 0.45, 6.0));  // gamma < sqrt(2d)
  CHECK_THROWS(make_gaussian_spec(1, 4.0, 0.45, 0.5));  // datum truncation too large
}

TEST_CASE("Gaussian drift and datum cutoff") {
  const auto s = make_gaussian_spec(1, 4.0, 0.45, 6.0);
  for (double t : {0.0, 0.5, 0.9}) {
    const double w = 4.0 * std::pow(1.0 - t, 0.45);
    CHECK(gaussian_velocity(s, t, 0.5 * w) == Approx(-0.5 * w / (1.0 - t)));
    CHECK(gaussian_velocity(s, t, 2.01 * w) == 0.0);
    CHECK(gaussian_velocity(s, t, -0.5 * w) == Approx(0.5 * w / (1.0 - t)));
  }
  CHECK(datum_cutoff(s, 5.9) == 1.0);
  CHECK(datum_cutoff(s, 12.1) == 0.0);
}

TEST_CASE("datum truncation against direct quadrature") {
  const auto s = make_gaussian_spec(1, 3.0, 5.0 / 12.0, 6.0);
  // int_{|x|>6} G(1, x) (1 - phi(|x|/6)) dx, G(1,x) = exp(-x^2/4)/sqrt(4 pi)
  double acc = 0.0;
  const int n = 400000;
  const double a = 6.0, b = 40.0, h = (b - a) / n;
  for (int i = 0; i <= n; ++i) {
    const double x = a + i * h;
    const double f = std::exp(-x * x / 4.0) / std::sqrt(4.0 * std::numbers::pi) * (1.0 - cutoff_phi(x / 6.0));
    acc += (i == 0 || i == n ? 0.5 : 1.0) * f * h;
  }
  CHECK(datum_truncation_l1(s) == Approx(2.0 * acc).epsilon(1e-6));
  CHECK(datum_truncation_l1(s) < 0.1);
}

TEST_CASE("Gaussian source norm decreases with gamma") {
  double prev = 1e300;
  for (double gamma : {3.0, 4.0, 5.0, 8.0}) {
    const double v = gaussian_source_l1(make_gaussian_spec(1, gamma, 5.0 / 12.0, 6.0)).value;
    CHECK(v > 0.0);
    CHECK(v < prev);
    prev = v;
  }
  CHECK(select_gamma(1, 5.0 / 12.0, 6.0, 0.1) == 3.0);
  CHECK_THROWS_AS(select_gamma(1, 5.0 / 12.0, 6.0, 1e-300, {3.0}), ConstructionError);
}

TEST_CASE("initial datum sampling") {
  const auto s = make_gaussian_spec(1, 3.0, 5.0 / 12.0, 6.0);
  const auto grid = make_grid(GridKind::Line, 1, 16.0, 8001);
  const auto u0 = gaussian_initial_datum(s, grid);
  CHECK(lp_norm(u0, 1.0) == Approx(1.0).epsilon(1e-6));
  CHECK(u0.values().front() == 0.0);
  CHECK_THROWS(gaussian_initial_datum(s, make_grid(GridKind::Line, 1, 8.0, 801)));  // grid misses the support
}
