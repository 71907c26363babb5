#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "advdiff/estimates.hpp"
#include "advdiff/mixed_norm.hpp"

using namespace advdiff;
using doctest::Approx;

TEST_CASE("classification of hand-enumerated triples") {
  struct Row {
    double r, q;
    int d;
    Regime regime;
  };
  const Row rows[] = {
      {kInf, 2, 2, Regime::Borderline},      {kInf, 3, 3, Regime::Borderline},
      {4, 2, 1, Regime::EnergyEstimate},     {2, 2, 2, Regime::BlowupPossible},
      {4, 4, 1, Regime::EnergyEstimate},     {10, 2, 1, Regime::StrictDuhamel},
      {kInf, 1.5, 1, Regime::OutsideStatedRange}, {2, 4, 2, Regime::BlowupPossible},
  };
  for (const Row& row : rows) CHECK(classify(ExponentTriple(row.r, row.q, row.d)).regime == row.regime);
  const auto c = classify(ExponentTriple(4, 4, 1));
  CHECK(c.sum == Approx(0.75));
  CHECK(c.strict_duhamel);
  CHECK(c.energy_estimate);
}

TEST_CASE("classification invariants on random triples") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> e(1.0, 12.0);
  std::uniform_int_distribution<int> dd(1, 4);
  for (int i = 0; i < 2000; ++i) {
    const double r = i % 7 == 0 ? kInf : e(rng);
    const double q = i % 11 == 0 ? kInf : e(rng);
    const int d = dd(rng);
    const auto c = classify(ExponentTriple(r, q, d));
    CHECK(c.blowup_possible == (c.sum > 1.0 + 1e-12));
    if (c.strict_duhamel) CHECK(c.sum < 1.0);
    if (c.energy_estimate) CHECK(c.sum <= 1.0 + 1e-12);
    if (c.blowup_possible) {
      REQUIRE(c.beta_interval);
      CHECK(c.beta_interval->first < c.beta_interval->second);
      CHECK(*c.beta_choice > c.beta_interval->first);
      CHECK(*c.beta_choice < 0.5);
    }
  }
  // On the critical line the blow-up flag is never raised.
  for (int d = 1; d <= 4; ++d)
    for (double q : {d + 0.5, d + 1.0, 2.0 * d, 10.0 * d}) {
      const double r = 2.0 / (1.0 - d / q);
      CHECK_FALSE(classify(ExponentTriple(r, q, d)).blowup_possible);
    }
}

TEST_CASE("GNL exponents and the L2 identity") {
  CHECK(gnl_exponent(1, kInf) == Approx(0.5));
  CHECK(gnl_exponent(3, 6.0) == Approx(1.0));
  CHECK(gnl_exponent(2, 2.0) == 0.0);
  CHECK_THROWS(gnl_exponent(3, 10.0));
  const auto grid = make_grid(GridKind::Line, 1, 20.0, 2001);
  for (const auto& f : gnl_corpus(grid, 42, 100)) CHECK(gnl_ratio(f, 2.0) == 1.0);
}

TEST_CASE("GNL ratio respects the sharp 1D Agmon bound") {
  // ||u||_inf^2 <= ||u||_2 ||u'||_2 on the line.
  const auto grid = make_grid(GridKind::Line, 1, 20.0, 8001);
  for (const auto& f : gnl_corpus(grid, 5, 50)) CHECK(gnl_ratio(f, kInf) <= 1.0 + 1e-6);
  const GnlConstant c = empirical_gnl_constant(grid, kInf, 5, 50);
  CHECK(c.constant == Approx(1.1 * c.max_ratio));
}

TEST_CASE("corpus is reproducible from its seed") {
  const auto grid = make_grid(GridKind::Line, 1, 10.0, 501);
  const auto a = gnl_corpus(grid, 9, 5), b = gnl_corpus(grid, 9, 5), c = gnl_corpus(grid, 10, 5);
  for (std::size_t k = 0; k < 5; ++k)
    for (std::size_t i = 0; i < grid.size(); ++i) CHECK(a[k][i] == b[k][i]);
  bool differs = false;
  for (std::size_t i = 0; i < grid.size(); ++i) differs = differs || a[0][i] != c[0][i];
  CHECK(differs);
}

TEST_CASE("energy constants for (4, 2, 1)") {
  const EnergyConstants k = energy_constants(ExponentTriple(4, 2, 1), 1.0, 1.0);
  CHECK(k.alpha == Approx(0.5));
  CHECK(k.p == kInf);
  CHECK(k.Q == Approx(4.0));
  // eps = (2/3)^{3/4}, K = eps^{-4} / 4 = (3/2)^3 / 4
  CHECK(k.young_K == Approx(27.0 / 32.0));
  CHECK(k.c_eff == Approx(27.0 / 32.0));
  CHECK(energy_constants(ExponentTriple(4, 2, 1), 1.0, 2.0).c_eff == Approx(27.0 / 32.0 * 3.0 / 4.0));
  CHECK_THROWS(energy_constants(ExponentTriple(2, 2, 2), 1.0));
}

TEST_CASE("Gronwall envelopes") {
  const auto grid = make_grid(GridKind::Line, 1, 10.0, 2001);
  const std::vector<double> ts{0.0, 0.1, 0.5, 1.0};
  const GronwallInputs in{&grid, 0.8};
  const auto flat = gronwall_bound(VelocityFieldSpec::zero(1), ExponentTriple(4, 2, 1), 2.0, ts, in);
  for (const auto& e : flat.entries()) CHECK(e.value == 2.0);
  const auto b = VelocityFieldSpec::compact_bump(1.0, 1.0);
  const auto g = gronwall_bound(b, ExponentTriple(4, 2, 1), 2.0, ts, in);
  // Stationary drift: exponent grows linearly, exp(C_eff ||b||_2^4 t).
  const double bq = velocity_lq_norm(b, 0.0, grid, 2.0);
  const double c = energy_constants(ExponentTriple(4, 2, 1), 0.8).c_eff;
  for (const auto& e : g.entries()) CHECK(e.value == Approx(2.0 * std::exp(c * std::pow(bq, 4) * e.t)));
}

TEST_CASE("L1-Linf interpolation bound") {
  CHECK(interpolation_bound(2.0, 3.0, 1.0) == Approx(2.0));
  CHECK(interpolation_bound(2.0, 3.0, kInf) == 3.0);
  const auto grid = make_grid(GridKind::Line, 1, 10.0, 2001);
  const auto f = ScalarField::sample(grid, [](double x) { return std::exp(-x * x) * (1.0 + 0.5 * std::sin(3 * x)); });
  for (double p : {1.5, 2.0, 4.0, 10.0})
    CHECK(lp_norm(f, p) <= interpolation_bound(lp_norm(f, 1.0), lp_norm(f, kInf), p) * (1 + 1e-12));
}

TEST_CASE("parabolic scaling of drifts and solutions") {
  const auto b = VelocityFieldSpec::selfsim_1d();
  for (double lambda : {0.25, 4.0}) {
    const auto bl = scaling_transform(b, lambda);
    REQUIRE(bl.singular_time());
    CHECK(*bl.singular_time() == Approx(1.0 / lambda));
    const double t = 0.1 / lambda, x = 0.7;
    CHECK(bl(t, x) == Approx(std::sqrt(lambda) * b(lambda * t, std::sqrt(lambda) * x)));
  }
  const DriftFunction u = [](double t, double x) { return t + x * x; };
  CHECK(scaling_transform_solution(u, 4.0)(0.5, 3.0) == Approx(2.0 + 36.0));
  CHECK(scaling_norm_exponent(ExponentTriple(4, 2, 1)) == Approx(0.0));
  CHECK(scaling_norm_exponent(ExponentTriple(2, 2, 1)) == Approx(-0.25));
}

TEST_CASE("mixed norm of a stationary field") {
  const auto grid = make_grid(GridKind::Line, 1, 10.0, 2001);
  const auto b = VelocityFieldSpec::compact_bump(1.0, 1.0);
  const double bq = velocity_lq_norm(b, 0.0, grid, 2.0);
  CHECK(mixed_norm(b, 4.0, 2.0, 0.0, 2.0, grid, 11) == Approx(bq * std::pow(2.0, 0.25)));
  CHECK(mixed_norm(b, kInf, 2.0, 0.0, 2.0, grid, 11) == Approx(bq));
}

TEST_CASE("mixed norm of the Gaussian drift stays finite below its threshold") {
  // ||b(t)||_1 ~ (1-t)^{2 beta - 1}: integrable in time for beta = 0.45.
  const auto s = make_gaussian_spec(1, 4.0, 0.45, 6.0);
  const auto b = VelocityFieldSpec::gaussian(s);
  const auto grid = make_grid(GridKind::Line, 1, 16.0, 8001);
  const double v = mixed_norm(b, 1.0, 1.0, 0.0, 0.99, grid, 400);
  CHECK(std::isfinite(v));
  CHECK(v > 0.0);
  NormSeries series(1.0);
  for (double t : mixed_norm_time_nodes(b, 0.5, 0.99, 30)) series.push(t, velocity_lq_norm(b, t, grid, 1.0));
  CHECK(-fit_blowup_exponent(series, 0.5, 0.99) == Approx(gaussian_b_decay_exponent(s, 1.0)).epsilon(1e-3));
  CHECK_THROWS(mixed_norm(b, 1.0, 1.0, 0.0, 1.0, grid, 10));
}
