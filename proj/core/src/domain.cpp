#include "advdiff/domain.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace advdiff {

double sphere_area(int d) {
  if (d < 1) throw std::invalid_argument("sphere_area: dimension must be >= 1");
  const double half = 0.5 * d;
  return 2.0 * std::pow(std::numbers::pi, half) / std::tgamma(half);
}

SpatialGrid::SpatialGrid(GridKind kind, int d, double extent, std::size_t n)
    : kind_(kind), d_(d), extent_(extent), n_(n), h_(0.0), sigma_(0.0) {
  if (!(extent > 0.0) || !std::isfinite(extent))
    throw std::invalid_argument("SpatialGrid: extent must be positive and finite");
  if (n < 3) throw std::invalid_argument("SpatialGrid: need at least 3 nodes");
  if (d < 1) throw std::invalid_argument("SpatialGrid: dimension must be >= 1");
  if (kind == GridKind::Line && d != 1)
    throw std::invalid_argument("SpatialGrid: Line grids are one-dimensional");
  const double length = kind == GridKind::Line ? 2.0 * extent : extent;
  h_ = length / static_cast<double>(n - 1);
  sigma_ = kind == GridKind::Radial ? sphere_area(d) : 1.0;
}

std::vector<double> SpatialGrid::nodes() const {
  std::vector<double> x(n_);
  for (std::size_t i = 0; i < n_; ++i) x[i] = node(i);
  return x;
}

double SpatialGrid::weight(std::size_t i) const noexcept {
  double w = (i == 0 || i + 1 == n_) ? 0.5 * h_ : h_;
  if (kind_ == GridKind::Radial) {
    const double r = node(i);
    w *= sigma_ * (d_ == 1 ? 1.0 : std::pow(r, d_ - 1));
  }
  return w;
}

SpatialGrid make_grid(GridKind kind, int d, double extent, std::size_t n) {
  return SpatialGrid(kind, d, extent, n);
}

ScalarField::ScalarField(SpatialGrid grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size())
    throw std::invalid_argument("ScalarField: value count does not match grid");
  for (double v : values_)
    if (!std::isfinite(v)) throw std::invalid_argument("ScalarField: non-finite value");
}

ScalarField::ScalarField(SpatialGrid grid) : grid_(grid), values_(grid.size(), 0.0) {}

ScalarField ScalarField::scaled(double c) const {
  std::vector<double> v(values_);
  for (double& x : v) x *= c;
  return ScalarField(grid_, std::move(v));
}

double ScalarField::max_abs() const noexcept {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

double lp_norm(const SpatialGrid& grid, std::span<const double> values, double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("lp_norm: p must be >= 1");
  if (values.size() != grid.size()) throw std::invalid_argument("lp_norm: size mismatch");
  if (p == kInf) {
    double m = 0.0;
    for (double v : values) m = std::max(m, std::abs(v));
    return m;
  }
  double sum = 0.0;
  if (p == 1.0) {
    for (std::size_t i = 0; i < values.size(); ++i) sum += grid.weight(i) * std::abs(values[i]);
    return sum;
  }
  if (p == 2.0) {
    for (std::size_t i = 0; i < values.size(); ++i) sum += grid.weight(i) * values[i] * values[i];
    return std::sqrt(sum);
  }
  for (std::size_t i = 0; i < values.size(); ++i)
    sum += grid.weight(i) * std::pow(std::abs(values[i]), p);
  return std::pow(sum, 1.0 / p);
}

double lp_norm(const ScalarField& field, double p) {
  return lp_norm(field.grid(), field.values(), p);
}

double integral(const SpatialGrid& grid, std::span<const double> values) {
  if (values.size() != grid.size()) throw std::invalid_argument("integral: size mismatch");
  double sum = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) sum += grid.weight(i) * values[i];
  return sum;
}

double mass_in_ball(const ScalarField& field, double radius) {
  const SpatialGrid& g = field.grid();
  const auto u = field.values();
  const double h = g.spacing();
  // Piecewise-linear integration of u(x) (times r^{d-1} sigma for radial).
  auto density = [&](std::size_t i) {
    if (g.kind() == GridKind::Line) return u[i];
    const double r = g.node(i);
    return sphere_area(g.dimension()) * std::pow(r, g.dimension() - 1) * u[i];
  };
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < g.size(); ++i) {
    double a = g.node(i), b = g.node(i + 1);
    const double lo = std::max(a, g.kind() == GridKind::Line ? -radius : 0.0);
    const double hi = std::min(b, radius);
    if (hi <= lo) continue;
    const double fa = density(i), fb = density(i + 1);
    auto interp = [&](double x) { return fa + (fb - fa) * (x - a) / h; };
    total += 0.5 * (interp(lo) + interp(hi)) * (hi - lo);
  }
  return total;
}

ExponentTriple::ExponentTriple(double r_, double q_, int d_) : r(r_), q(q_), d(d_) {
  if (!(r >= 1.0) || !(q >= 1.0))
    throw std::invalid_argument("ExponentTriple: exponents must lie in [1, inf]");
  if (d < 1) throw std::invalid_argument("ExponentTriple: dimension must be >= 1");
}

NormSeries::NormSeries(double p) : p_(p) {
  if (!(p >= 1.0)) throw std::invalid_argument("NormSeries: p must be >= 1");
}

void NormSeries::push(double t, double value) {
  if (!entries_.empty() && !(t > entries_.back().t))
    throw std::invalid_argument("NormSeries: times must be strictly increasing");
  if (!(value >= 0.0)) throw std::invalid_argument("NormSeries: norm values must be >= 0");
  entries_.push_back({t, value});
}

LinearFit least_squares(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("least_squares: need at least two paired samples");
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("least_squares: degenerate abscissae");
  LinearFit fit{sxy / sxx, 0.0, 0.0};
  fit.intercept = my - fit.slope * mx;
  for (std::size_t i = 0; i < x.size(); ++i)
    fit.max_residual = std::max(fit.max_residual, std::abs(y[i] - fit.slope * x[i] - fit.intercept));
  return fit;
}

double fit_blowup_exponent(const NormSeries& series, double t_min, double t_max, double t_blow) {
  std::vector<double> x, y;
  for (const auto& e : series.entries()) {
    if (e.t < t_min || e.t > t_max) continue;
    if (!(e.t < t_blow) || !(e.value > 0.0))
      throw std::invalid_argument("fit_blowup_exponent: samples must be positive and before blow-up");
    x.push_back(-std::log(t_blow - e.t));
    y.push_back(std::log(e.value));
  }
  return least_squares(x, y).slope;
}

}  // namespace advdiff
