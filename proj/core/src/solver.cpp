#include "advdiff/solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "advdiff/counterexamples.hpp"
#include "advdiff/diagnostics.hpp"

namespace advdiff {

std::string to_string(StopReason reason) {
  switch (reason) {
    case StopReason::ReachedEnd: return "ReachedEnd";
    case StopReason::NormCeiling: return "NormCeiling";
    case StopReason::Instability: return "Instability";
  }
  return "unknown";
}

ImexIntegrator::ImexIntegrator(const SolveProblem& problem)
    : problem_(problem),
      radial_(problem.grid.kind() == GridKind::Radial),
      n_(problem.grid.size()),
      first_(radial_ ? 0 : 1),
      last_(n_ - 2),
      h_(problem.grid.spacing()),
      sigma_(radial_ ? sphere_area(problem.grid.dimension()) : 1.0) {
  const int d = radial_ ? problem.grid.dimension() : 1;
  volume_.resize(n_);
  area_.resize(n_ - 1);
  face_x_.resize(n_ - 1);
  for (std::size_t i = 0; i + 1 < n_; ++i) {
    face_x_[i] = problem.grid.node(i) + 0.5 * h_;
    area_[i] = radial_ ? std::pow(face_x_[i], d - 1) : 1.0;
  }
  for (std::size_t i = 0; i < n_; ++i) {
    if (!radial_) {
      volume_[i] = h_;
      continue;
    }
    const double lo = i == 0 ? 0.0 : problem.grid.node(i) - 0.5 * h_;
    const double hi = problem.grid.node(i) + 0.5 * h_;
    volume_[i] = (std::pow(hi, d) - std::pow(lo, d)) / d;
  }
  face_b_.resize(n_ - 1);
  adv_flux_.resize(n_ - 1);
  lower_.resize(n_);
  upper_.resize(n_);
  inv_denom_.resize(n_);
  rhs_.resize(n_);
  scratch_.resize(n_);
}

void ImexIntegrator::sample_faces(double t) const {
  if (face_b_valid_ && face_b_time_ == t) return;
  problem_.b.sample(t, face_x_, face_b_);
  face_b_time_ = t;
  face_b_valid_ = true;
}

double ImexIntegrator::stable_dt(double t) const {
  sample_faces(t);
  double rate = 0.0;
  for (std::size_t i = first_; i <= last_; ++i) {
    double out = area_[i] * std::max(face_b_[i], 0.0);
    if (i > 0) out += area_[i - 1] * std::max(-face_b_[i - 1], 0.0);
    rate = std::max(rate, out / volume_[i]);
  }
  const double dt_diff = problem_.diffusion_ratio * h_ * h_;
  return rate > 0.0 ? std::min(problem_.cfl_safety / rate, dt_diff) : dt_diff;
}

double ImexIntegrator::mass(const std::vector<double>& u) const {
  double m = 0.0;
  for (std::size_t i = first_; i <= last_; ++i) m += volume_[i] * u[i];
  return sigma_ * m;
}

double ImexIntegrator::l1_mass(const std::vector<double>& u) const {
  double m = 0.0;
  for (std::size_t i = first_; i <= last_; ++i) m += volume_[i] * std::abs(u[i]);
  return sigma_ * m;
}

void ImexIntegrator::step(SolverState& state, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("step: dt must be positive");
  std::vector<double>& u = state.u;
  if (u.size() != n_) throw std::invalid_argument("step: state size does not match the grid");
  const double t_new = state.t + dt;
  const double left_new = problem_.boundary.left ? problem_.boundary.left(t_new) : 0.0;
  const double right_new = problem_.boundary.right ? problem_.boundary.right(t_new) : 0.0;

  sample_faces(state.t);
  if (problem_.advection == AdvectionScheme::Upwind1) {
    for (std::size_t j = 0; j + 1 < n_; ++j)
      adv_flux_[j] = area_[j] * face_b_[j] * (face_b_[j] > 0.0 ? u[j] : u[j + 1]);
  } else {
    // Limited slope of cell i; zero next to the truncation boundary, even
    // reflection through the radial origin.
    auto slope = [&](std::size_t i) {
      if (i + 1 >= n_ || (i == 0 && !radial_)) return 0.0;
      const double a = u[i] - (i == 0 ? u[1] : u[i - 1]);
      const double b = u[i + 1] - u[i];
      return a * b > 0.0 ? 2.0 * a * b / (a + b) : 0.0;
    };
    for (std::size_t j = 0; j + 1 < n_; ++j) {
      const double face = face_b_[j] > 0.0 ? u[j] + 0.5 * slope(j) : u[j + 1] - 0.5 * slope(j + 1);
      adv_flux_[j] = area_[j] * face_b_[j] * face;
    }
  }

  const double inv_h = 1.0 / h_;
  for (std::size_t i = first_; i <= last_; ++i) {
    const double a_lo = i > 0 ? area_[i - 1] : 0.0;
    double diffusion = area_[i] * (u[i + 1] - u[i]);
    if (i > 0) diffusion -= a_lo * (u[i] - u[i - 1]);
    const double advection = adv_flux_[i] - (i > 0 ? adv_flux_[i - 1] : 0.0);
    rhs_[i] = volume_[i] * u[i] + dt * (0.5 * inv_h * diffusion - advection);
  }
  factor(dt);
  const double k = 0.5 * dt * inv_h;
  if (!radial_) rhs_[first_] += k * area_[0] * left_new;
  rhs_[last_] += k * area_[last_] * right_new;

  // Boundary-face fluxes with the old state, completed after the solve.
  const double right_old = area_[last_] * (u[last_ + 1] - u[last_]) * inv_h;
  const double left_old = radial_ ? 0.0 : area_[0] * (u[1] - u[0]) * inv_h;

  // Thomas sweeps with the cached factorization.
  rhs_[first_] *= inv_denom_[first_];
  for (std::size_t i = first_ + 1; i <= last_; ++i) rhs_[i] = (rhs_[i] - lower_[i] * rhs_[i - 1]) * inv_denom_[i];
  for (std::size_t i = last_; i > first_; --i) rhs_[i - 1] -= scratch_[i - 1] * rhs_[i];

  for (std::size_t i = first_; i <= last_; ++i)
    if (!std::isfinite(rhs_[i])) throw NumericalError("step: non-finite value in the solution");
  std::copy(rhs_.begin() + static_cast<std::ptrdiff_t>(first_), rhs_.begin() + static_cast<std::ptrdiff_t>(last_ + 1),
            u.begin() + static_cast<std::ptrdiff_t>(first_));
  if (!radial_) u[0] = left_new;
  u[n_ - 1] = right_new;

  const double right_flux = 0.5 * (right_old + area_[last_] * (u[last_ + 1] - u[last_]) / h_) - adv_flux_[last_];
  double inflow = right_flux;
  if (!radial_) inflow += adv_flux_[0] - 0.5 * (left_old + area_[0] * (u[1] - u[0]) / h_);
  last_inflow_ = sigma_ * dt * inflow;
  state.t = t_new;
}

void ImexIntegrator::factor(double dt) {
  if (dt == factored_dt_) return;
  const double k = 0.5 * dt / h_;
  for (std::size_t i = first_; i <= last_; ++i) {
    const double a_lo = i > 0 ? area_[i - 1] : 0.0;
    lower_[i] = (i > first_) ? -k * a_lo : 0.0;
    upper_[i] = (i < last_) ? -k * area_[i] : 0.0;
    const double diag = volume_[i] + k * (a_lo + area_[i]);
    const double denom = i == first_ ? diag : diag - lower_[i] * scratch_[i - 1];
    inv_denom_[i] = 1.0 / denom;
    scratch_[i] = upper_[i] * inv_denom_[i];
  }
  factored_dt_ = dt;
}

void step(const SolveProblem& problem, SolverState& state, double dt) {
  ImexIntegrator integrator(problem);
  integrator.step(state, dt);
}

namespace {

void validate_problem(const SolveProblem& p) {
  const SpatialGrid& g = p.grid;
  if (!(p.u0.grid() == g)) throw std::invalid_argument("solve: u0 lives on a different grid");
  if (g.kind() == GridKind::Line && p.b.dimension() != 1)
    throw std::invalid_argument("solve: Line grids need a one-dimensional drift");
  if (g.kind() == GridKind::Radial && p.b.dimension() != g.dimension())
    throw std::invalid_argument("solve: drift dimension does not match the radial grid");
  if (g.kind() == GridKind::Radial && p.boundary.left)
    throw std::invalid_argument("solve: radial grids take no left boundary data");
  if (!(p.t0 >= 0.0 && p.t0 < p.t_end)) throw std::invalid_argument("solve: need 0 <= t0 < t_end");
  if (p.b.singular_time() && !(p.t_end < *p.b.singular_time()))
    throw std::invalid_argument("solve: t_end must precede the singular time of the drift");
  if (!(p.cfl_safety > 0.0 && p.cfl_safety <= 1.0)) throw std::invalid_argument("solve: cfl_safety must lie in (0, 1]");
  if (!(p.diffusion_ratio > 0.0)) throw std::invalid_argument("solve: diffusion_ratio must be positive");
  if (!(p.norm_ceiling > 1.0)) throw std::invalid_argument("solve: norm_ceiling must exceed 1");
  if (!std::is_sorted(p.output_times.begin(), p.output_times.end()))
    throw std::invalid_argument("solve: output_times must be sorted");
  for (double t : p.output_times)
    if (t < p.t0 || t > p.t_end) throw std::invalid_argument("solve: output time outside [t0, t_end]");
  for (double q : p.norm_ps)
    if (!(q >= 1.0)) throw std::invalid_argument("solve: tracked norms need p >= 1");
  for (double r : p.ball_radii)
    if (!(r > 0.0)) throw std::invalid_argument("solve: ball radii must be positive");

  const auto u = p.u0.values();
  const double peak = p.u0.max_abs();
  const bool left_free = g.kind() == GridKind::Line && !p.boundary.left;
  if (left_free && std::abs(u.front()) > 1e-10 * peak)
    throw std::invalid_argument("solve: u0 does not decay at the left boundary");
  if (!p.boundary.right && std::abs(u.back()) > 1e-10 * peak)
    throw std::invalid_argument("solve: u0 does not decay at the right boundary");
}

double max_abs(const std::vector<double>& u) {
  double m = 0.0;
  for (double v : u) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace

SolveResult solve(const SolveProblem& problem) {
  validate_problem(problem);
  const SpatialGrid& grid = problem.grid;
  ImexIntegrator integrator(problem);

  SolverState state{problem.t0, std::vector<double>(problem.u0.values().begin(), problem.u0.values().end())};
  const double u0_peak = problem.u0.max_abs();
  const double mass0 = integrator.mass(state.u);
  const double l1_0 = integrator.l1_mass(state.u);
  const double mass_scale = std::abs(mass0) > 0.0 ? std::abs(mass0) : 1.0;
  const double l1_scale = l1_0 > 0.0 ? l1_0 : 1.0;

  SolveResult result{problem.u0, {}, {}, {}, {}, {}, StopReason::ReachedEnd, problem.t0};
  for (double p : problem.norm_ps) result.series.emplace_back(p);
  result.ball_mass.resize(problem.ball_radii.size());
  result.min_value_ratio = 0.0;

  double inflow = 0.0, transfer = 0.0;
  auto record = [&] {
    const ScalarField snapshot(grid, state.u);
    for (auto& s : result.series) s.push(state.t, lp_norm(snapshot, s.p()));
    result.times.push_back(state.t);
    result.mass.push_back(integrator.mass(state.u));
    for (std::size_t k = 0; k < problem.ball_radii.size(); ++k)
      result.ball_mass[k].push_back(mass_in_ball(snapshot, problem.ball_radii[k]));
  };
  auto monitor = [&] {
    const double m = integrator.mass(state.u);
    result.mass_defect = std::max(result.mass_defect, std::abs(m - mass0 - inflow) / mass_scale);
    result.l1_excess = std::max(result.l1_excess, (integrator.l1_mass(state.u) - l1_0 - transfer) / l1_scale);
    if (u0_peak > 0.0) {
      const double lo = *std::min_element(state.u.begin(), state.u.end());
      result.min_value_ratio = std::min(result.min_value_ratio, lo / u0_peak);
    }
  };

  std::vector<double> targets;
  for (double t : problem.output_times)
    if (t > problem.t0) targets.push_back(t);
  if (targets.empty() || targets.back() < problem.t_end) targets.push_back(problem.t_end);
  targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
  if (!problem.output_times.empty() && problem.output_times.front() == problem.t0) record();

  const double ceiling = problem.norm_ceiling * (u0_peak > 0.0 ? u0_peak : 1.0);
  bool stopped = false;
  for (double target : targets) {
    while (state.t < target) {
      double dt = std::min(integrator.stable_dt(state.t), target - state.t);
      const bool last = state.t + dt >= target - 1e-13 * std::max(1.0, target);
      if (last) dt = target - state.t;
      try {
        integrator.step(state, dt);
      } catch (const NumericalError&) {
        result.stop_reason = StopReason::Instability;
        stopped = true;
        break;
      }
      if (last) state.t = target;
      ++result.steps;
      result.min_dt = result.steps == 1 ? dt : std::min(result.min_dt, dt);
      result.max_dt = std::max(result.max_dt, dt);
      if (problem.record_steps) result.step_log.push_back({state.t, dt});
      inflow += integrator.last_boundary_inflow();
      transfer += std::abs(integrator.last_boundary_inflow());
      monitor();

      const double peak = max_abs(state.u);
      if (peak > 0.0) {
        const double edge = grid.kind() == GridKind::Line ? std::max(std::abs(state.u[1]), std::abs(state.u[grid.size() - 2]))
                                                          : std::abs(state.u[grid.size() - 2]);
        if (problem.boundary.homogeneous()) result.boundary_ratio = std::max(result.boundary_ratio, edge / peak);
      }
      if (peak > ceiling) {
        result.stop_reason = StopReason::NormCeiling;
        stopped = true;
        break;
      }
    }
    if (stopped) break;
    record();
  }
  if (stopped && (result.times.empty() || result.times.back() < state.t)) record();
  if (result.boundary_ratio > 1e-10)
    warn("solve: boundary leakage ratio " + std::to_string(result.boundary_ratio) + " exceeds 1e-10");

  result.t_reached = state.t;
  result.final = ScalarField(grid, std::move(state.u));
  return result;
}

SolveResult radial_solve(const SolveProblem& problem) {
  if (problem.grid.kind() != GridKind::Radial || problem.grid.dimension() < 2)
    throw std::invalid_argument("radial_solve: requires a Radial grid with d >= 2");
  return solve(problem);
}

}  // namespace advdiff
