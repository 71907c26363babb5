#pragma once

// Finite-volume IMEX integrator for u_t + div(b u) = Lap u on a truncated
// line or a radial grid: Crank-Nicolson diffusion, explicit first-order
// upwind advection, Dirichlet data at the truncation boundary.

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "advdiff/domain.hpp"
#include "advdiff/velocity.hpp"

namespace advdiff {

enum class StopReason { ReachedEnd, NormCeiling, Instability };

/// Upwind1: donor-cell value. VanLeer: donor-cell value plus a van Leer
/// limited half slope (second order where smooth, positive under the CFL bound).
enum class AdvectionScheme { Upwind1, VanLeer };

std::string to_string(StopReason reason);

/// Time-dependent boundary values; empty functions mean homogeneous data.
struct DirichletData {
  std::function<double(double t)> left;   // Line grids only
  std::function<double(double t)> right;
  bool homogeneous() const noexcept { return !left && !right; }
};

struct SolveProblem {
  SpatialGrid grid;
  ScalarField u0;
  VelocityFieldSpec b;
  double t0 = 0.0;
  double t_end = 1.0;
  std::vector<double> output_times{};
  double cfl_safety = 0.4;
  /// Upper bound on dt / h^2.
  double diffusion_ratio = 2.0;
  AdvectionScheme advection = AdvectionScheme::VanLeer;
  std::vector<double> norm_ps{1.0, 2.0, kInf};
  /// NormCeiling once ||u||_inf exceeds this multiple of its initial value.
  double norm_ceiling = 1e6;
  DirichletData boundary{};
  /// Radii of the mass-in-ball diagnostic columns.
  std::vector<double> ball_radii{};
  bool record_steps = true;
};

struct StepRecord {
  double t;
  double dt;
};

struct SolveResult {
  ScalarField final;
  std::vector<NormSeries> series;              // one per norm_ps entry
  std::vector<double> times;                   // output times reached
  std::vector<double> mass;                    // conservative cell sum at `times`
  std::vector<std::vector<double>> ball_mass;  // [radius][time]
  std::vector<StepRecord> step_log;
  StopReason stop_reason = StopReason::ReachedEnd;
  double t_reached = 0.0;
  std::size_t steps = 0;
  double min_dt = 0.0;
  double max_dt = 0.0;
  /// max_t |M(t) - M(0) - boundary inflow| / |M(0)|.
  double mass_defect = 0.0;
  /// max_t (||u(t)||_1 - ||u0||_1 - boundary transfer) / ||u0||_1.
  double l1_excess = 0.0;
  /// max_t min_i u_i / max|u0| (positivity monitor, meaningful for u0 >= 0).
  double min_value_ratio = 0.0;
  /// max_t of the next-to-boundary value relative to max|u| (leakage monitor).
  double boundary_ratio = 0.0;
};

struct SolverState {
  double t;
  std::vector<double> u;
};

/// One IMEX step engine bound to a problem (geometry and drift).
class ImexIntegrator {
 public:
  explicit ImexIntegrator(const SolveProblem& problem);

  /// Largest step allowed by the upwind positivity bound and the diffusion cap at time t.
  double stable_dt(double t) const;

  /// Advances `state` by dt. Throws NumericalError on non-finite values.
  void step(SolverState& state, double dt);

  /// Net inflow through the boundary faces during the last step.
  double last_boundary_inflow() const noexcept { return last_inflow_; }

  /// sigma * sum V_i u_i over the unknowns.
  double mass(const std::vector<double>& u) const;
  double l1_mass(const std::vector<double>& u) const;

 private:
  const SolveProblem& problem_;
  bool radial_;
  std::size_t n_;
  std::size_t first_, last_;  // unknown index range [first_, last_]
  double h_;
  double sigma_;
  std::vector<double> volume_, area_, face_x_;
  mutable std::vector<double> face_b_;
  mutable double face_b_time_ = 0.0;
  mutable bool face_b_valid_ = false;
  void sample_faces(double t) const;
  std::vector<double> adv_flux_, lower_, upper_, rhs_, scratch_, inv_denom_;
  double factored_dt_ = -1.0;
  void factor(double dt);
  double last_inflow_ = 0.0;
};

/// Advances the state by one step of size dt (convenience wrapper).
void step(const SolveProblem& problem, SolverState& state, double dt);

/// Validates the problem and integrates to t_end (Line or Radial grid).
SolveResult solve(const SolveProblem& problem);

/// As solve; requires a Radial grid with d >= 2.
SolveResult radial_solve(const SolveProblem& problem);

}  // namespace advdiff
