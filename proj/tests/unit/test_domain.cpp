#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "advdiff/domain.hpp"

using namespace advdiff;
using doctest::Approx;

namespace {
constexpr double pi = std::numbers::pi;
}

TEST_CASE("sphere areas match the closed forms") {
  CHECK(sphere_area(1) == Approx(2.0));
  CHECK(sphere_area(2) == Approx(2.0 * pi));
  CHECK(sphere_area(3) == Approx(4.0 * pi));
  CHECK(sphere_area(4) == Approx(2.0 * pi * pi));
  CHECK(sphere_area(5) == Approx(8.0 * pi * pi / 3.0));
}

TEST_CASE("reciprocal and conjugate exponents") {
  CHECK(reciprocal(kInf) == 0.0);
  CHECK(reciprocal(4.0) == 0.25);
  CHECK(conjugate(1.0) == kInf);
  CHECK(conjugate(kInf) == 1.0);
  CHECK(conjugate(4.0) == Approx(4.0 / 3.0));
  for (double p : {1.5, 2.0, 3.0, 7.0}) CHECK(reciprocal(p) + reciprocal(conjugate(p)) == Approx(1.0));
}

TEST_CASE("grid geometry") {
  const auto line = make_grid(GridKind::Line, 1, 5.0, 11);
  CHECK(line.spacing() == Approx(1.0));
  CHECK(line.node(0) == -5.0);
  CHECK(line.node(10) == Approx(5.0));
  const auto radial = make_grid(GridKind::Radial, 3, 2.0, 5);
  CHECK(radial.node(0) == 0.0);
  CHECK(radial.weight(0) == 0.0);
  CHECK_THROWS_AS(make_grid(GridKind::Line, 2, 1.0, 10), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(GridKind::Line, 1, -1.0, 10), std::invalid_argument);
}

TEST_CASE("Lp norms of a Gaussian on the line") {
  const auto g = make_grid(GridKind::Line, 1, 12.0, 4001);
  const auto f = ScalarField::sample(g, [](double x) { return std::exp(-x * x); });
  CHECK(lp_norm(f, 1.0) == Approx(std::sqrt(pi)).epsilon(1e-12));
  CHECK(lp_norm(f, 2.0) == Approx(std::pow(pi / 2.0, 0.25)).epsilon(1e-12));
  CHECK(lp_norm(f, kInf) == Approx(1.0));
  // ||e^{-x^2}||_p = (pi / p)^{1/(2p)}
  CHECK(lp_norm(f, 3.0) == Approx(std::pow(pi / 3.0, 1.0 / 6.0)).epsilon(1e-12));
}

TEST_CASE("radial weights integrate Gaussians in d = 2, 3") {
  for (int d : {2, 3}) {
    const auto g = make_grid(GridKind::Radial, d, 10.0, 20001);
    const auto f = ScalarField::sample(g, [](double r) { return std::exp(-r * r); });
    CHECK(integral(g, f.values()) == Approx(std::pow(pi, d / 2.0)).epsilon(1e-7));
  }
}

TEST_CASE("mass in a ball") {
  const auto g = make_grid(GridKind::Line, 1, 4.0, 801);
  const auto one = ScalarField::sample(g, [](double) { return 1.0; });
  CHECK(mass_in_ball(one, 1.0) == Approx(2.0).epsilon(1e-12));
  CHECK(mass_in_ball(one, 0.503) == Approx(1.006).epsilon(1e-10));
  const auto gr = make_grid(GridKind::Radial, 2, 4.0, 4001);
  const auto oner = ScalarField::sample(gr, [](double) { return 1.0; });
  CHECK(mass_in_ball(oner, 1.5) == Approx(pi * 2.25).epsilon(1e-6));
}

TEST_CASE("fields reject non-finite values") {
  const auto g = make_grid(GridKind::Line, 1, 1.0, 3);
  CHECK_THROWS_AS(ScalarField(g, {0.0, std::nan(""), 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(ScalarField(g, {0.0, 1.0}), std::invalid_argument);
}

TEST_CASE("exponent triples") {
  CHECK(ExponentTriple(4, 2, 1).scaling_sum() == Approx(1.0));
  CHECK(ExponentTriple(kInf, 3, 3).scaling_sum() == Approx(1.0));
  CHECK(ExponentTriple(kInf, kInf, 2).scaling_sum() == 0.0);
  CHECK_THROWS_AS(ExponentTriple(0.5, 2, 1), std::invalid_argument);
  CHECK_THROWS_AS(ExponentTriple(2, 2, 0), std::invalid_argument);
}

TEST_CASE("norm series ordering") {
  NormSeries s(2.0);
  s.push(0.1, 1.0);
  CHECK_THROWS_AS(s.push(0.1, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(s.push(0.2, -1.0), std::invalid_argument);
  CHECK_THROWS_AS(NormSeries(0.5), std::invalid_argument);
}

TEST_CASE("least squares recovers an exact line") {
  std::vector<double> x{0, 1, 2, 3}, y;
  for (double v : x) y.push_back(2.5 * v - 1.0);
  const LinearFit f = least_squares(x, y);
  CHECK(f.slope == Approx(2.5));
  CHECK(f.intercept == Approx(-1.0));
  CHECK(f.max_residual == Approx(0.0).epsilon(1e-12));
}

TEST_CASE("blow-up exponent of a synthetic power law") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> a_dist(0.05, 2.0);
  for (int trial = 0; trial < 20; ++trial) {
    const double a = a_dist(rng);
    NormSeries s(2.0);
    for (int k = 0; k < 20; ++k) {
      const double t = 1.0 - 0.5 * std::pow(0.02, k / 19.0);
      s.push(t, 3.0 * std::pow(1.0 - t, -a));
    }
    CHECK(fit_blowup_exponent(s, 0.5, 0.99) == Approx(a).epsilon(1e-10));
  }
}
