#pragma once

// Heat kernel, heat convolution on line grids and the Duhamel (mild)
// solution of u_t + (b u)_x = u_xx by Picard iteration.

#include <cstddef>
#include <vector>

#include "advdiff/domain.hpp"
#include "advdiff/velocity.hpp"

namespace advdiff {

enum class KernelDirection { Forward, BackwardTo1 };

/// Forward: G(t, .) with t > 0. BackwardTo1: G(1 - t, .) with 0 <= t < 1.
class HeatKernelQuery {
 public:
  HeatKernelQuery(double t, int d, KernelDirection direction = KernelDirection::Forward);

  double t() const noexcept { return t_; }
  int dimension() const noexcept { return d_; }
  KernelDirection direction() const noexcept { return direction_; }
  /// Effective diffusion time s (t or 1 - t).
  double s() const noexcept { return direction_ == KernelDirection::Forward ? t_ : 1.0 - t_; }

 private:
  double t_;
  int d_;
  KernelDirection direction_;
};

/// (4 pi s)^{-d/2} exp(-rho^2 / (4 s)), rho = |x_or_r|.
double heat_kernel(const HeatKernelQuery& query, double x_or_r);

/// K(d, q*) = ||grad G(1, .)||_{L^{q*}(R^d)}, computed once per (d, q*) and cached.
double grad_heat_kernel_constant(int d, double q_star);

/// Scaling exponent e with ||grad G(t)||_{q*} = K(d, q*) t^e: (d - q*(d+1)) / (2 q*).
double grad_heat_kernel_exponent(int d, double q_star);

/// ||grad G(t, .)||_{L^{q*}} by radial quadrature at t, cross-checked against
/// K(d, q*) t^e; throws NumericalError beyond 1e-6 relative.
double grad_heat_kernel_lq_norm(double t, double q_star, int d);

/// Discrete convolution G(s) * f on a Line grid (direct quadrature sum).
/// Warns when the input does not decay at the boundary.
ScalarField heat_convolve(const ScalarField& field, double s);

struct DuhamelStep {
  double beta;         // step length, clamped to (0, 1]
  bool clamped;        // raw beta exceeded 1
  double raw_beta;
  double alpha;        // [d - q*(d+1)] r* / (2 q*)
  double r_star;
  double q_star;
  double kernel_constant;  // K(d, q*, r*) = ||grad G||_{L^{r*}(0,1; L^{q*})}
  long iterations;         // floor(1 / beta)
  double overall_constant; // 2^{n+1}
};

/// Length of the short-time window on which the Duhamel map contracts by 1/2:
/// beta = (1 / (K b_norm))^{r* / (alpha + 1)}. Requires 2/r + d/q < 1.
DuhamelStep duhamel_timestep_bound(double b_norm, double r, double q, int d);

struct MildOptions {
  double converged_tol = 1e-9;  // early exit on successive sup difference
  double failure_tol = 1e-4;    // non-convergence threshold on the last difference
};

struct MildSolution {
  ScalarField final;
  std::vector<NormSeries> series;  // L^1, L^2, L^inf of the last iterate
  std::vector<double> times;
  int iterations;                  // Picard maps applied
  double last_difference;          // sup difference of the last two iterates
};

/// Picard iteration of the Duhamel formula on `nt` uniform time nodes over
/// [0, t_end], started from the pure heat evolution. The time integral uses
/// piecewise-linear interpolation of b u with exact kernel moments.
MildSolution mild_solve(const ScalarField& u0, const VelocityFieldSpec& b, double t_end, std::size_t nt,
                        int picard_iters = 8, const MildOptions& options = {});

}  // namespace advdiff
