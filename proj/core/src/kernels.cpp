#include "advdiff/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "advdiff/diagnostics.hpp"
#include "quadrature.hpp"

namespace advdiff {

HeatKernelQuery::HeatKernelQuery(double t, int d, KernelDirection direction)
    : t_(t), d_(d), direction_(direction) {
  if (d < 1) throw std::invalid_argument("HeatKernelQuery: d must be >= 1");
  if (!std::isfinite(t)) throw std::invalid_argument("HeatKernelQuery: t must be finite");
  if (direction == KernelDirection::Forward && !(t > 0.0))
    throw std::invalid_argument("HeatKernelQuery: forward kernel needs t > 0");
  if (direction == KernelDirection::BackwardTo1 && !(t >= 0.0 && t < 1.0))
    throw std::invalid_argument("HeatKernelQuery: backward kernel needs 0 <= t < 1");
}

double heat_kernel(const HeatKernelQuery& query, double x_or_r) {
  const double s = query.s();
  if (!(s > 0.0)) throw std::invalid_argument("heat_kernel: diffusion time must be positive");
  const double rho = std::abs(x_or_r);
  return std::pow(4.0 * std::numbers::pi * s, -0.5 * query.dimension()) * std::exp(-rho * rho / (4.0 * s));
}

// ---------------------------------------------------------------------------
// ||grad G||_{q*}

namespace {

void check_grad_args(double q_star, int d) {
  if (d < 1) throw std::invalid_argument("grad_heat_kernel: d must be >= 1");
  if (!(q_star >= 1.0) || !std::isfinite(q_star))
    throw std::invalid_argument("grad_heat_kernel: q* must lie in [1, inf)");
}

// ||grad G(t)||_{q*} by Simpson over rho in [0, sqrt(t) z_max].
double grad_norm_quadrature(double t, double q, int d, std::size_t nodes) {
  const double sigma = sphere_area(d);
  const double norm = std::pow(4.0 * std::numbers::pi * t, -0.5 * d);
  auto f = [&](double rho) {
    const double g = norm * std::exp(-rho * rho / (4.0 * t));
    return std::pow(rho / (2.0 * t) * g, q) * sigma * std::pow(rho, d - 1);
  };
  // exp(-q z^2 / 4) < e^{-60} beyond z_max.
  const double z_max = std::sqrt(240.0 / q) + 4.0;
  return std::pow(detail::simpson(f, 0.0, std::sqrt(t) * z_max, nodes), 1.0 / q);
}

}  // namespace

double grad_heat_kernel_exponent(int d, double q_star) {
  check_grad_args(q_star, d);
  return (d - q_star * (d + 1.0)) / (2.0 * q_star);
}

double grad_heat_kernel_constant(int d, double q_star) {
  check_grad_args(q_star, d);
  static std::mutex mutex;
  static std::map<std::pair<int, double>, double> cache;
  const auto key = std::make_pair(d, q_star);
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  const double value = grad_norm_quadrature(1.0, q_star, d, 8001);
  std::lock_guard lock(mutex);
  return cache.emplace(key, value).first->second;
}

double grad_heat_kernel_lq_norm(double t, double q_star, int d) {
  check_grad_args(q_star, d);
  if (!(t > 0.0) || !std::isfinite(t)) throw std::invalid_argument("grad_heat_kernel_lq_norm: t must be positive");
  const double direct = grad_norm_quadrature(t, q_star, d, 6001);
  const double scaled = grad_heat_kernel_constant(d, q_star) * std::pow(t, grad_heat_kernel_exponent(d, q_star));
  if (std::abs(direct - scaled) > 1e-6 * scaled) {
    std::ostringstream msg;
    msg << "grad_heat_kernel_lq_norm: quadrature " << direct << " and scaling law " << scaled
        << " disagree (d=" << d << ", q*=" << q_star << ", t=" << t << ")";
    throw NumericalError(msg.str());
  }
  return direct;
}

// ---------------------------------------------------------------------------
// Convolution on uniform line grids

namespace {

// Kernel sampled at offsets k h, k = 0..m, premultiplied by h; values at
// negative offsets follow from the parity (+1 even, -1 odd).
struct ToeplitzKernel {
  std::vector<double> taps;
  double parity;

  template <class F>
  static ToeplitzKernel build(F&& f, double h, std::size_t n, double parity) {
    ToeplitzKernel k{std::vector<double>(n), parity};
    double peak = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      k.taps[i] = h * f(static_cast<double>(i) * h);
      peak = std::max(peak, std::abs(k.taps[i]));
    }
    std::size_t last = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (std::abs(k.taps[i]) >= 1e-20 * peak) last = i;
    k.taps.resize(last + 1);
    return k;
  }

  // out += sign * (K * f)
  void apply(std::span<const double> f, std::span<double> out, double sign) const {
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(f.size());
    const std::ptrdiff_t m = static_cast<std::ptrdiff_t>(taps.size()) - 1;
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      double acc = taps[0] * f[static_cast<std::size_t>(i)];
      const std::ptrdiff_t reach = std::min(m, std::max(i, n - 1 - i));
      for (std::ptrdiff_t k = 1; k <= reach; ++k) {
        const double tk = taps[static_cast<std::size_t>(k)];
        // K(x_i - x_j) with j = i - k (offset +k) and j = i + k (offset -k)
        if (i - k >= 0) acc += tk * f[static_cast<std::size_t>(i - k)];
        if (i + k < n) acc += parity * tk * f[static_cast<std::size_t>(i + k)];
      }
      out[static_cast<std::size_t>(i)] += sign * acc;
    }
  }
};

ToeplitzKernel heat_taps(double s, double h, std::size_t n) {
  const HeatKernelQuery q(s, 1);
  return ToeplitzKernel::build([&](double x) { return heat_kernel(q, x); }, h, n, 1.0);
}

void check_decay(std::span<const double> v, const char* who) {
  double peak = 0.0;
  for (double x : v) peak = std::max(peak, std::abs(x));
  if (peak == 0.0) return;
  const double edge = std::max(std::abs(v.front()), std::abs(v.back()));
  if (edge > 1e-10 * peak) {
    std::ostringstream msg;
    msg << who << ": boundary value ratio " << edge / peak << " exceeds 1e-10 (truncation leakage)";
    warn(msg.str());
  }
}

}  // namespace

ScalarField heat_convolve(const ScalarField& field, double s) {
  const SpatialGrid& grid = field.grid();
  if (grid.kind() != GridKind::Line) throw std::invalid_argument("heat_convolve: requires a Line grid");
  if (!(s > 0.0)) throw std::invalid_argument("heat_convolve: s must be positive");
  check_decay(field.values(), "heat_convolve");
  const ToeplitzKernel k = heat_taps(s, grid.spacing(), grid.size());
  std::vector<double> out(grid.size(), 0.0);
  k.apply(field.values(), out, 1.0);
  return ScalarField(grid, std::move(out));
}

// ---------------------------------------------------------------------------
// Duhamel step bound

DuhamelStep duhamel_timestep_bound(double b_norm, double r, double q, int d) {
  if (!(b_norm > 0.0) || !std::isfinite(b_norm))
    throw std::invalid_argument("duhamel_timestep_bound: b_norm must be positive and finite");
  const ExponentTriple triple(r, q, d);
  if (!(triple.scaling_sum() < 1.0))
    throw std::invalid_argument("duhamel_timestep_bound: requires 2/r + d/q < 1");
  DuhamelStep out{};
  out.q_star = conjugate(q);
  out.r_star = conjugate(r);
  out.alpha = grad_heat_kernel_exponent(d, out.q_star) * out.r_star;
  if (!(out.alpha > -1.0)) throw std::invalid_argument("duhamel_timestep_bound: alpha <= -1");
  // int_0^1 (K t^e)^{r*} dt = K^{r*} / (alpha + 1)
  out.kernel_constant = grad_heat_kernel_constant(d, out.q_star) * std::pow(out.alpha + 1.0, -1.0 / out.r_star);
  out.raw_beta = std::pow(1.0 / (out.kernel_constant * b_norm), out.r_star / (out.alpha + 1.0));
  out.clamped = out.raw_beta > 1.0;
  out.beta = std::min(out.raw_beta, 1.0);
  out.iterations = static_cast<long>(std::floor(1.0 / out.beta));
  out.overall_constant = std::pow(2.0, static_cast<double>(out.iterations + 1));
  return out;
}

// ---------------------------------------------------------------------------
// Mild solution

MildSolution mild_solve(const ScalarField& u0, const VelocityFieldSpec& b, double t_end, std::size_t nt,
                        int picard_iters, const MildOptions& options) {
  const SpatialGrid& grid = u0.grid();
  if (grid.kind() != GridKind::Line) throw std::invalid_argument("mild_solve: requires a Line grid");
  if (b.dimension() != 1) throw std::invalid_argument("mild_solve: drift must be one-dimensional");
  if (nt < 2) throw std::invalid_argument("mild_solve: nt must be >= 2");
  if (picard_iters < 1) throw std::invalid_argument("mild_solve: picard_iters must be >= 1");
  if (!(t_end > 0.0)) throw std::invalid_argument("mild_solve: t_end must be positive");
  if (b.singular_time() && !(t_end < *b.singular_time()))
    throw std::domain_error("mild_solve: t_end reaches the singular time of the drift");
  check_decay(u0.values(), "mild_solve");

  const std::size_t n = grid.size();
  const double h = grid.spacing();
  const double dt = t_end / static_cast<double>(nt - 1);
  if (dt < 0.5 * h * h) warn("mild_solve: time step below h^2/2; kernels are under-resolved on the grid");

  const ToeplitzKernel heat = heat_taps(dt, h, n);
  const double root = 2.0 * std::sqrt(dt);
  auto W = [&](double x) { return x == 0.0 ? 0.0 : -0.5 * std::copysign(std::erfc(std::abs(x) / root), x); };
  auto I0 = [&](double x) {
    return std::sqrt(dt / std::numbers::pi) * std::exp(-x * x / (4.0 * dt)) -
           0.5 * std::abs(x) * std::erfc(std::abs(x) / root);
  };
  // Linear interpolation of f = b u on [t_{m-1}, t_m]:
  //   int grad G(t_m - s) * f(s) ds = A * f_m + B * f_{m-1}.
  const ToeplitzKernel A =
      ToeplitzKernel::build([&](double x) { return W(x) + x * I0(x) / (2.0 * dt); }, h, n, -1.0);
  const ToeplitzKernel B = ToeplitzKernel::build([&](double x) { return -x * I0(x) / (2.0 * dt); }, h, n, -1.0);

  std::vector<double> times(nt);
  for (std::size_t m = 0; m < nt; ++m) times[m] = static_cast<double>(m) * dt;
  times.back() = t_end;

  const std::vector<double> xs = grid.nodes();
  std::vector<std::vector<double>> drift(nt, std::vector<double>(n));
  for (std::size_t m = 0; m < nt; ++m) b.sample(times[m], xs, drift[m]);

  using Trajectory = std::vector<std::vector<double>>;
  Trajectory u(nt, std::vector<double>(n, 0.0));
  u[0].assign(u0.values().begin(), u0.values().end());
  for (std::size_t m = 1; m < nt; ++m) heat.apply(u[m - 1], u[m], 1.0);

  int iterations = 0;
  double diff = 0.0;
  Trajectory v(nt, std::vector<double>(n, 0.0));
  std::vector<std::vector<double>> flux(nt, std::vector<double>(n));
  for (int k = 0; k < picard_iters; ++k) {
    for (std::size_t m = 0; m < nt; ++m)
      for (std::size_t i = 0; i < n; ++i) flux[m][i] = drift[m][i] * u[m][i];
    v[0] = u[0];
    for (std::size_t m = 1; m < nt; ++m) {
      std::fill(v[m].begin(), v[m].end(), 0.0);
      heat.apply(v[m - 1], v[m], 1.0);
      A.apply(flux[m], v[m], -1.0);
      B.apply(flux[m - 1], v[m], -1.0);
    }
    diff = 0.0;
    for (std::size_t m = 0; m < nt; ++m)
      for (std::size_t i = 0; i < n; ++i) diff = std::max(diff, std::abs(v[m][i] - u[m][i]));
    std::swap(u, v);
    ++iterations;
    if (!std::isfinite(diff)) throw NumericalError("mild_solve: Picard iterate became non-finite");
    if (diff < options.converged_tol) break;
  }
  if (diff > options.failure_tol) {
    std::ostringstream msg;
    msg << "mild_solve: Picard iteration did not converge (last sup difference " << diff << ")";
    throw NumericalError(msg.str());
  }

  std::vector<NormSeries> series{NormSeries(1.0), NormSeries(2.0), NormSeries(kInf)};
  for (std::size_t m = 0; m < nt; ++m)
    for (auto& s : series) s.push(times[m], lp_norm(grid, u[m], s.p()));
  return {ScalarField(grid, std::move(u.back())), std::move(series), std::move(times), iterations, diff};
}

}  // namespace advdiff
