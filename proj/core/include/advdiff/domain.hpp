#pragma once

// Grids, sampled fields and quadrature for L^p norms on truncated lines and
// radially symmetric domains.

#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace advdiff {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// 1/p with the convention 1/inf = 0.
constexpr double reciprocal(double p) noexcept { return p == kInf ? 0.0 : 1.0 / p; }

/// Hoelder conjugate p' with 1/p + 1/p' = 1 (1 <-> inf).
constexpr double conjugate(double p) noexcept {
  if (p == kInf) return 1.0;
  if (p == 1.0) return kInf;
  return p / (p - 1.0);
}

/// Surface area of the unit sphere S^{d-1} in R^d; sigma_0 = 2 counts the
/// two endpoints of the 1D "sphere".
double sphere_area(int d);

enum class GridKind { Line, Radial };

/// Uniform grid: nodes -L..L (Line, d = 1) or 0..R (Radial, any d >= 1).
class SpatialGrid {
 public:
  SpatialGrid(GridKind kind, int d, double extent, std::size_t n);

  GridKind kind() const noexcept { return kind_; }
  int dimension() const noexcept { return d_; }
  double extent() const noexcept { return extent_; }
  std::size_t size() const noexcept { return n_; }
  double spacing() const noexcept { return h_; }

  double node(std::size_t i) const noexcept {
    return kind_ == GridKind::Line ? -extent_ + static_cast<double>(i) * h_
                                   : static_cast<double>(i) * h_;
  }
  std::vector<double> nodes() const;

  /// Quadrature weight of node i: trapezoid weight, times
  /// sigma_{d-1} r^{d-1} on radial grids.
  double weight(std::size_t i) const noexcept;

  bool operator==(const SpatialGrid&) const = default;

 private:
  GridKind kind_;
  int d_;
  double extent_;
  std::size_t n_;
  double h_;
  double sigma_;
};

SpatialGrid make_grid(GridKind kind, int d, double extent, std::size_t n);

/// Sampled scalar function on a grid. Values are finite on construction.
class ScalarField {
 public:
  ScalarField(SpatialGrid grid, std::vector<double> values);
  explicit ScalarField(SpatialGrid grid);

  template <class F>
  static ScalarField sample(const SpatialGrid& grid, F&& f) {
    std::vector<double> v(grid.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = f(grid.node(i));
    return ScalarField(grid, std::move(v));
  }

  const SpatialGrid& grid() const noexcept { return grid_; }
  std::span<const double> values() const noexcept { return values_; }
  std::span<double> values() noexcept { return values_; }
  double operator[](std::size_t i) const noexcept { return values_[i]; }
  std::size_t size() const noexcept { return values_.size(); }

  ScalarField scaled(double c) const;
  double max_abs() const noexcept;

 private:
  SpatialGrid grid_;
  std::vector<double> values_;
};

/// ||u||_p by composite trapezoid (radial weight on Radial grids);
/// p = inf is the node maximum.
double lp_norm(const ScalarField& field, double p);
double lp_norm(const SpatialGrid& grid, std::span<const double> values, double p);

/// Signed integral of u (trapezoid, radial weight included).
double integral(const SpatialGrid& grid, std::span<const double> values);

/// Integral of u over |x| <= radius (trapezoid on the nodes inside the ball,
/// with the partial cell at the edge handled by linear interpolation).
double mass_in_ball(const ScalarField& field, double radius);

/// Exponent pair (r, q) in dimension d, values in [1, inf].
struct ExponentTriple {
  double r;
  double q;
  int d;

  ExponentTriple(double r_, double q_, int d_);

  /// 2/r + d/q with 1/inf = 0.
  double scaling_sum() const noexcept { return 2.0 * reciprocal(r) + d * reciprocal(q); }
};

struct NormSample {
  double t;
  double value;
};

/// Time-stamped sequence of ||u(t_k)||_p; t strictly increasing, values >= 0.
class NormSeries {
 public:
  explicit NormSeries(double p);

  void push(double t, double value);

  double p() const noexcept { return p_; }
  const std::vector<NormSample>& entries() const noexcept { return entries_; }
  bool empty() const noexcept { return entries_.empty(); }
  std::size_t size() const noexcept { return entries_.size(); }
  const NormSample& back() const { return entries_.back(); }

 private:
  double p_;
  std::vector<NormSample> entries_;
};

struct LinearFit {
  double slope;
  double intercept;
  double max_residual;
};

/// Ordinary least squares y = slope * x + intercept.
LinearFit least_squares(std::span<const double> x, std::span<const double> y);

/// Slope of log ||u(t)|| against -log(t_blow - t) over samples with
/// t in [t_min, t_max]; this is the blow-up exponent a in ||u|| ~ (t_blow - t)^{-a}.
double fit_blowup_exponent(const NormSeries& series, double t_min, double t_max,
                           double t_blow = 1.0);

}  // namespace advdiff
