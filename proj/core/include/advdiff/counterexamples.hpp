#pragma once

// Closed-form generators for the two blow-up constructions:
//  * the truncated backward-Gaussian perturbation (drift -x/(1-t) cut off at
//    |x| ~ gamma (1-t)^beta, compactly supported initial datum);
//  * the self-similar profiles u = (1-t)^{-alpha} u~(x / sqrt(1-t)),
//    b = (1-t)^{-1/2} b~(x / sqrt(1-t)) in 1D and in radial symmetry.

#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "advdiff/domain.hpp"

namespace advdiff {

/// A closed-form object failed one of its checkable construction properties.
class ConstructionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a quadrature or iteration cannot certify its own accuracy.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Truncated Gaussian construction

struct GaussianPerturbationSpec {
  int d = 1;
  double gamma = 4.0;
  double beta = 0.45;
  double datum_cutoff_radius = 6.0;
  /// false replaces the drift cutoff chi by 1 (drift = -x/(1-t) everywhere).
  bool truncate_drift = true;
};

/// Validates 0 < beta < 1/2, gamma >= sqrt(2d) and the datum truncation
/// ||G(0)(1 - phi_c)||_1 < 1/2.
GaussianPerturbationSpec make_gaussian_spec(int d, double gamma, double beta,
                                            double datum_cutoff_radius);
void validate(const GaussianPerturbationSpec& spec);

/// Radial (d >= 2) or signed (d = 1) drift component
/// -x/(1-t) * phi(|x| / (gamma (1-t)^beta)).
double gaussian_velocity(const GaussianPerturbationSpec& spec, double t, double x);

/// phi_c(x) = phi(|x| / R_c): 1 on |x| <= R_c, 0 on |x| >= 2 R_c.
double datum_cutoff(const GaussianPerturbationSpec& spec, double x);

/// ||G(0)(1 - phi_c)||_{L^1(R^d)} by radial quadrature.
double datum_truncation_l1(const GaussianPerturbationSpec& spec);

/// Samples G(0,x) phi_c(x); throws ConstructionError when the truncation
/// error exceeds `budget`.
ScalarField gaussian_initial_datum(const GaussianPerturbationSpec& spec, const SpatialGrid& grid,
                                   double budget = 0.1);

struct SourceQuadrature {
  std::size_t time_nodes = 4001;
  std::size_t space_nodes = 1201;  // per sub-interval [w,2w] and [2w,4w]
};

struct SourceNorm {
  double value;    // total ||dt G + div(bG) - Lap G||_{L^1 L^1}
  double annulus;  // contribution from gamma(1-t)^beta <= |x| <= 4 gamma (1-t)^beta
  double tail;     // exact contribution from |x| > 4 gamma (1-t)^beta
};

/// Space-time L^1 norm of the residual div(B (1-chi) G) left by the cutoff.
/// Throws NumericalError when the analytic tail exceeds 1% of the value.
SourceNorm gaussian_source_l1(const GaussianPerturbationSpec& spec, const SourceQuadrature& quad = {});

/// Exponent e with ||b(t)||_q ~ (1-t)^e: (beta d + q (beta - 1)) / q.
double gaussian_b_decay_exponent(const GaussianPerturbationSpec& spec, double q);
double gaussian_b_decay_exponent(double beta, int d, double q);

/// Infimum of the admissible beta: (1 - 1/r) / (1 + d/q).
double beta_threshold(double r, double q, int d);

/// Midpoint between beta_threshold and 1/2. Requires 2/r + d/q > 1.
double choose_beta(double r, double q, int d);

/// Smallest gamma in `candidates` whose source norm is below `budget`.
double select_gamma(int d, double beta, double datum_cutoff_radius, double budget,
                    const std::vector<double>& candidates = {3, 4, 5, 6, 8, 10, 12},
                    const SourceQuadrature& quad = {});

// ---------------------------------------------------------------------------
// Self-similar profiles

struct ProfilePoint {
  double U;   // primitive (1D) or radial potential
  double u;   // profile
  double du;  // derivative of u
  double b;   // drift profile
};

/// 1D profile: U(y) = y^{1/4} + (3/16) y^{-7/4} for |y| > 2 (odd), extended
/// on [-2,2] by the odd degree-11 polynomial matching U..U^(5) at y = 2.
class SelfSimilarProfile1D {
 public:
  static constexpr double alpha = 3.0 / 8.0;
  static constexpr double gamma = 1.0 / 4.0;
  static constexpr double C = 3.0 / 16.0;
  static constexpr double M = 2.0;
  static constexpr int dimension = 1;

  /// Solves for the extension and checks u > 0 on [-2,2].
  SelfSimilarProfile1D();

  ProfilePoint operator()(double y) const;

  /// Coefficients a_1, a_3, ..., a_11 of the odd polynomial on [-2, 2].
  const std::array<double, 6>& extension_coefficients() const noexcept { return coeffs_; }

 private:
  std::array<double, 6> coeffs_{};
};

/// Radial profile in dimension d >= 2, gamma = d - 5/4, alpha = d/2 - 1/8,
/// C = (d - 1/4)/4, M = sqrt(2d) + 1. U(r) = psi L r + (1 - psi) U_out(r) with a
/// C-infinity cutoff psi equal to 1 on [0, M-1] and 0 on [M, inf).
class SelfSimilarProfileRadial {
 public:
  explicit SelfSimilarProfileRadial(int d, double cutoff_steepness = 1.5);

  int dimension() const noexcept { return d_; }
  double alpha() const noexcept { return alpha_; }
  double gamma() const noexcept { return gamma_; }
  double C() const noexcept { return C_; }
  double M() const noexcept { return M_; }
  double L() const noexcept { return L_; }
  double cutoff_steepness() const noexcept { return steepness_; }

  /// r >= 0; at r = 0 returns the limits U = 0, u = L d, b = 0.
  ProfilePoint operator()(double r) const;

  /// Closed forms valid for r > M.
  double outer_U(double r) const;
  double outer_u(double r) const;
  double outer_b(double r) const;

 private:
  int d_;
  double gamma_, alpha_, C_, M_, L_, steepness_;
};

ProfilePoint profile_1d(double y);
ProfilePoint profile_radial(double r, const SelfSimilarProfileRadial& spec);

/// Largest L with L r <= U_out(r) on [M-1, M] (golden-section minimisation of U_out(r)/r).
double radial_profile_constant(int d);

/// Signed residual of the profile ODE
///   alpha u + y u'/2 + (b u)' - u'' = 0                                  (1D)
///   (alpha - d/2) u + div(y u)/2 + div(b u) - Lap u = 0   (radial, r > 0)
/// with 4th-order central differences of width h.
double profile_ode_residual(const SelfSimilarProfile1D& profile, double y, double h);
double profile_ode_residual(const SelfSimilarProfileRadial& profile, double r, double h);

/// (1-t)^{-alpha} u~(x / sqrt(1-t)); rejects t >= 1.
double selfsim_solution(const SelfSimilarProfile1D& profile, double t, double x);
double selfsim_solution(const SelfSimilarProfileRadial& profile, double t, double r);

/// (1-t)^{-1/2} b~(x / sqrt(1-t)); rejects t >= 1.
double selfsim_velocity(const SelfSimilarProfile1D& profile, double t, double x);
double selfsim_velocity(const SelfSimilarProfileRadial& profile, double t, double r);

/// ||u(t, .)||_{L^p} of the self-similar solution over the whole line or R^d:
/// trapezoid on `grid` plus Simpson quadrature of the tail beyond the grid
/// extent in the logarithmic variable. p = inf is the node maximum.
double selfsim_lp_norm(const SelfSimilarProfile1D& profile, double t, double p, const SpatialGrid& grid);
double selfsim_lp_norm(const SelfSimilarProfileRadial& profile, double t, double p, const SpatialGrid& grid);

}  // namespace advdiff
