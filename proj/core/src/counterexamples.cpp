#include "advdiff/counterexamples.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "advdiff/cutoff.hpp"
#include "advdiff/kernels.hpp"
#include "quadrature.hpp"

namespace advdiff {

namespace {

// a (a-1) ... (a-j+1)
double falling(double a, int j) {
  double f = 1.0;
  for (int k = 0; k < j; ++k) f *= a - k;
  return f;
}

// Solves the small dense system in place (partial pivoting).
template <std::size_t N>
std::array<double, N> solve_dense(std::array<std::array<double, N>, N> a, std::array<double, N> b) {
  for (std::size_t col = 0; col < N; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < N; ++r)
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    std::swap(a[col], a[piv]);
    std::swap(b[col], b[piv]);
    for (std::size_t r = col + 1; r < N; ++r) {
      const double f = a[r][col] / a[col][col];
      for (std::size_t c = col; c < N; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  std::array<double, N> x{};
  for (std::size_t i = N; i-- > 0;) {
    double s = b[i];
    for (std::size_t c = i + 1; c < N; ++c) s -= a[i][c] * x[c];
    x[i] = s / a[i][i];
  }
  return x;
}

double backward_gaussian_at_zero(int d, double rho) {
  return heat_kernel(HeatKernelQuery(0.0, d, KernelDirection::BackwardTo1), rho);
}

}  // namespace

// ---------------------------------------------------------------------------
// Truncated Gaussian construction

void validate(const GaussianPerturbationSpec& spec) {
  if (spec.d < 1) throw std::invalid_argument("GaussianPerturbationSpec: d must be >= 1");
  if (!(spec.beta > 0.0 && spec.beta < 0.5))
    throw std::invalid_argument("GaussianPerturbationSpec: beta must lie in (0, 1/2)");
  if (!(spec.gamma >= std::sqrt(2.0 * spec.d)))
    throw std::invalid_argument("GaussianPerturbationSpec: gamma must be >= sqrt(2d)");
  if (!(spec.datum_cutoff_radius > 0.0))
    throw std::invalid_argument("GaussianPerturbationSpec: datum cutoff radius must be positive");
  if (!(datum_truncation_l1(spec) < 0.5))
    throw ConstructionError("GaussianPerturbationSpec: datum cutoff radius too small (truncation >= 1/2)");
}

GaussianPerturbationSpec make_gaussian_spec(int d, double gamma, double beta, double datum_cutoff_radius) {
  GaussianPerturbationSpec spec{d, gamma, beta, datum_cutoff_radius, true};
  validate(spec);
  return spec;
}

double gaussian_velocity(const GaussianPerturbationSpec& spec, double t, double x) {
  if (!(t < 1.0)) throw std::domain_error("gaussian_velocity: t must be < 1");
  const double s = 1.0 - t;
  if (!spec.truncate_drift) return -x / s;
  const double w = spec.gamma * std::pow(s, spec.beta);
  const double y = std::abs(x) / w;
  if (y >= 2.0) return 0.0;
  return -x / s * cutoff_phi(y);
}

double datum_cutoff(const GaussianPerturbationSpec& spec, double x) {
  return cutoff_phi(std::abs(x) / spec.datum_cutoff_radius);
}

double datum_truncation_l1(const GaussianPerturbationSpec& spec) {
  const int d = spec.d;
  const double rc = spec.datum_cutoff_radius;
  const double sigma = sphere_area(d);
  auto f = [&](double rho) {
    return sigma * std::pow(rho, d - 1) * backward_gaussian_at_zero(d, rho) *
           (1.0 - cutoff_phi(rho / rc));
  };
  // Beyond rc + 60 the Gaussian factor is below e^{-900}.
  return detail::simpson(f, rc, 2.0 * rc, 4001) + detail::simpson(f, 2.0 * rc, 2.0 * rc + 60.0, 12001);
}

ScalarField gaussian_initial_datum(const GaussianPerturbationSpec& spec, const SpatialGrid& grid,
                                   double budget) {
  if (grid.kind() == GridKind::Radial && grid.dimension() != spec.d)
    throw std::invalid_argument("gaussian_initial_datum: grid dimension does not match spec");
  if (grid.kind() == GridKind::Line && spec.d != 1)
    throw std::invalid_argument("gaussian_initial_datum: Line grids require d = 1");
  if (grid.extent() < 2.0 * spec.datum_cutoff_radius)
    throw std::invalid_argument("gaussian_initial_datum: grid does not cover the datum support");
  const double err = datum_truncation_l1(spec);
  if (!(err < budget))
    throw ConstructionError("gaussian_initial_datum: truncation error " + std::to_string(err) +
                            " exceeds budget " + std::to_string(budget));
  return ScalarField::sample(grid, [&](double x) {
    return backward_gaussian_at_zero(spec.d, std::abs(x)) * datum_cutoff(spec, x);
  });
}

SourceNorm gaussian_source_l1(const GaussianPerturbationSpec& spec, const SourceQuadrature& quad) {
  if (spec.d < 1 || !(spec.beta > 0.0 && spec.beta < 0.5) || !(spec.gamma > 0.0))
    throw std::invalid_argument("gaussian_source_l1: invalid spec");
  if (!spec.truncate_drift) return {0.0, 0.0, 0.0};

  const int d = spec.d;
  const double sigma = sphere_area(d);
  const double beta = spec.beta, gamma = spec.gamma;

  // Spatial L^1 norm of div(B (1-chi) G) at s = 1 - t, split into the
  // annulus [w, 4w] (quadrature) and |x| > 4w where chi = 0 and the
  // integrand is 2 Lap G >= 0, integrating exactly to sigma R^d G(R) / s.
  auto slice = [&](double s, double& tail) {
    const double w = gamma * std::pow(s, beta);
    const double norm = std::pow(4.0 * std::numbers::pi * s, -0.5 * d);
    auto g = [&](double rho) { return norm * std::exp(-rho * rho / (4.0 * s)); };
    auto integrand = [&](double rho) {
      const double gv = g(rho);
      const double y = rho / w;
      const double chi_tilde = 1.0 - cutoff_phi(y);
      const double lap = gv * (rho * rho / (4.0 * s * s) - 0.5 * d / s);
      const double div = chi_tilde * 2.0 * lap + rho * gv * cutoff_phi_derivative(y) / (s * w);
      return std::abs(div) * sigma * std::pow(rho, d - 1);
    };
    const double annulus = detail::simpson(integrand, w, 2.0 * w, quad.space_nodes) +
                           detail::simpson(integrand, 2.0 * w, 4.0 * w, quad.space_nodes);
    const double R = 4.0 * w;
    tail = sigma * std::pow(R, d) * g(R) / s;
    return annulus;
  };

  // s = e^{-tau}: geometric clustering toward t = 1. Stop once the Gaussian
  // factor at the annulus edge, exp(-gamma^2 s^{2 beta - 1} / 4), is below e^{-700}.
  const double tau_max = std::min(700.0, std::log(gamma * gamma / 2800.0) / (2.0 * beta - 1.0) + 5.0);
  const double tau_end = std::max(tau_max, 1.0);
  const std::size_t n = quad.time_nodes;
  const double dtau = tau_end / static_cast<double>(n - 1);
  double annulus = 0.0, tail = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double tau = static_cast<double>(k) * dtau;
    const double s = std::exp(-tau);
    const double wgt = (k == 0 || k + 1 == n ? 0.5 : 1.0) * dtau * s;
    double tail_k = 0.0;
    annulus += wgt * slice(s, tail_k);
    tail += wgt * tail_k;
  }
  SourceNorm out{annulus + tail, annulus, tail};
  if (out.value > 0.0 && tail > 0.01 * out.value)
    throw NumericalError("gaussian_source_l1: tail beyond 4 gamma (1-t)^beta exceeds 1% of the value");
  return out;
}

double gaussian_b_decay_exponent(double beta, int d, double q) {
  if (!(q >= 1.0) || q == kInf) throw std::invalid_argument("gaussian_b_decay_exponent: q must lie in [1, inf)");
  return (beta * d + q * (beta - 1.0)) / q;
}

double gaussian_b_decay_exponent(const GaussianPerturbationSpec& spec, double q) {
  return gaussian_b_decay_exponent(spec.beta, spec.d, q);
}

double beta_threshold(double r, double q, int d) {
  const ExponentTriple triple(r, q, d);
  return (1.0 - reciprocal(r)) / (1.0 + d * reciprocal(q));
}

double choose_beta(double r, double q, int d) {
  const ExponentTriple triple(r, q, d);
  if (!(triple.scaling_sum() > 1.0))
    throw std::invalid_argument("choose_beta: requires 2/r + d/q > 1 (no admissible beta otherwise)");
  return 0.5 * (beta_threshold(r, q, d) + 0.5);
}

double select_gamma(int d, double beta, double datum_cutoff_radius, double budget,
                    const std::vector<double>& candidates, const SourceQuadrature& quad) {
  std::vector<double> sorted(candidates);
  std::sort(sorted.begin(), sorted.end());
  for (double gamma : sorted) {
    if (gamma < std::sqrt(2.0 * d)) continue;
    GaussianPerturbationSpec spec{d, gamma, beta, datum_cutoff_radius, true};
    if (gaussian_source_l1(spec, quad).value < budget) return gamma;
  }
  throw ConstructionError("select_gamma: no candidate gamma meets the source budget");
}

// ---------------------------------------------------------------------------
// 1D self-similar profile

namespace {

constexpr double kOuter1dExp = 0.25;        // y^{1/4}
constexpr double kOuter1dExp2 = -7.0 / 4.0;  // (3/16) y^{-7/4}

double outer_1d_derivative(double y, int j) {
  return falling(kOuter1dExp, j) * std::pow(y, kOuter1dExp - j) +
         SelfSimilarProfile1D::C * falling(kOuter1dExp2, j) * std::pow(y, kOuter1dExp2 - j);
}

}  // namespace

SelfSimilarProfile1D::SelfSimilarProfile1D() {
  std::array<std::array<double, 6>, 6> a{};
  std::array<double, 6> rhs{};
  for (int j = 0; j < 6; ++j) {
    for (int k = 0; k < 6; ++k) {
      const int power = 2 * k + 1;
      a[j][k] = j > power ? 0.0 : falling(power, j) * std::pow(M, power - j);
    }
    rhs[j] = outer_1d_derivative(M, j);
  }
  coeffs_ = solve_dense(a, rhs);

  constexpr int lattice = 20000;
  for (int i = 0; i <= lattice; ++i) {
    const double y = M * i / lattice;
    if (!((*this)(y).u > 0.0))
      throw ConstructionError("SelfSimilarProfile1D: extension derivative not positive at y = " +
                              std::to_string(y));
  }
}

ProfilePoint SelfSimilarProfile1D::operator()(double y) const {
  const double a = std::abs(y);
  const double sign = y < 0.0 ? -1.0 : 1.0;
  ProfilePoint p{};
  if (a > M) {
    p.U = std::pow(a, 0.25) + C * std::pow(a, -1.75);
    p.u = 0.25 * std::pow(a, -0.75) - (21.0 / 64.0) * std::pow(a, -2.75);
    p.du = -(3.0 / 16.0) * std::pow(a, -1.75) + (231.0 / 256.0) * std::pow(a, -3.75);
    p.b = 231.0 * std::pow(a, -3.0) / (4.0 * (16.0 - 21.0 * std::pow(a, -2.0)));
  } else {
    // P(a) = sum c_k a^{2k+1}; Horner in a^2.
    const double a2 = a * a;
    double P = 0.0, dP = 0.0, ddP = 0.0;
    for (int k = 5; k >= 0; --k) {
      const double ck = coeffs_[static_cast<std::size_t>(k)];
      P = P * a2 + ck;
      dP = dP * a2 + ck * (2 * k + 1);
      if (k > 0) ddP = ddP * a2 + ck * (2 * k + 1) * (2 * k);
    }
    p.U = P * a;
    p.u = dP;
    p.du = ddP * a;
    p.b = (p.du - (alpha - 0.5) * p.U - 0.5 * a * p.u) / p.u;
  }
  p.U *= sign;
  p.du *= sign;
  p.b *= sign;
  return p;
}

ProfilePoint profile_1d(double y) {
  static const SelfSimilarProfile1D profile;
  return profile(y);
}

// ---------------------------------------------------------------------------
// Radial self-similar profile

namespace {

struct OuterRadial {
  double gamma, C;
  double U(double r) const { return std::pow(r, -gamma) + C * std::pow(r, -gamma - 2.0); }
  double dU(double r) const {
    return -gamma * std::pow(r, -gamma - 1.0) + C * (-gamma - 2.0) * std::pow(r, -gamma - 3.0);
  }
  double ddU(double r) const {
    return gamma * (gamma + 1.0) * std::pow(r, -gamma - 2.0) +
           C * (gamma + 2.0) * (gamma + 3.0) * std::pow(r, -gamma - 4.0);
  }
};

}  // namespace

double radial_profile_constant(int d) {
  if (d < 2) throw std::invalid_argument("radial_profile_constant: d must be >= 2");
  const OuterRadial outer{d - 1.25, 0.25 * (d - 0.25)};
  const double M = std::sqrt(2.0 * d) + 1.0;
  auto ratio = [&](double r) { return outer.U(r) / r; };
  const double rmin = detail::golden_section_min(ratio, M - 1.0, M);
  return std::min({ratio(rmin), ratio(M - 1.0), ratio(M)});
}

SelfSimilarProfileRadial::SelfSimilarProfileRadial(int d, double cutoff_steepness)
    : d_(d),
      gamma_(d - 1.25),
      alpha_(0.5 * d - 0.125),
      C_(0.25 * (d - 0.25)),
      M_(std::sqrt(2.0 * d) + 1.0),
      L_(0.0),
      steepness_(cutoff_steepness) {
  if (d < 2) throw std::invalid_argument("SelfSimilarProfileRadial: d must be >= 2");
  if (!(cutoff_steepness > 0.0))
    throw std::invalid_argument("SelfSimilarProfileRadial: cutoff steepness must be positive");
  L_ = radial_profile_constant(d);

  constexpr int lattice = 100000;
  constexpr double r_max = 100.0;
  for (int i = 0; i <= lattice; ++i) {
    const double r = r_max * i / lattice;
    if (!((*this)(r).u > 0.0))
      throw ConstructionError("SelfSimilarProfileRadial: profile not positive at r = " + std::to_string(r));
  }
}

double SelfSimilarProfileRadial::outer_U(double r) const {
  return std::pow(r, -d_ + 1.25) + C_ * std::pow(r, -d_ - 0.75);
}

double SelfSimilarProfileRadial::outer_u(double r) const {
  return 0.25 * std::pow(r, -d_ + 0.25) - (7.0 / 16.0) * (d_ - 0.25) * std::pow(r, -d_ - 1.75);
}

double SelfSimilarProfileRadial::outer_b(double r) const {
  const double k = 7.0 * (4.0 * d_ - 1.0);
  return k * (4.0 * d_ + 7.0) * std::pow(r, -3.0) / (4.0 * (16.0 - k * std::pow(r, -2.0)));
}

ProfilePoint SelfSimilarProfileRadial::operator()(double r) const {
  if (!(r >= 0.0)) throw std::domain_error("SelfSimilarProfileRadial: r must be >= 0");
  const double dm1 = d_ - 1.0;
  if (r <= M_ - 1.0) {
    return {L_ * r, L_ * d_, 0.0, -alpha_ * r / d_};
  }
  if (r >= M_) {
    const double u = outer_u(r);
    const double du = 0.25 * (-d_ + 0.25) * std::pow(r, -d_ - 0.75) +
                      (7.0 / 16.0) * (d_ - 0.25) * (d_ + 1.75) * std::pow(r, -d_ - 2.75);
    return {outer_U(r), u, du, outer_b(r)};
  }
  const OuterRadial outer{gamma_, C_};
  // psi(r) = S(M - r): psi' = -S', psi'' = S''.
  const Transition tr = smooth_transition(M_ - r, steepness_);
  const double psi = tr.value, dpsi = -tr.d1, ddpsi = tr.d2;
  const double Uo = outer.U(r), dUo = outer.dU(r), ddUo = outer.ddU(r);
  const double U = psi * L_ * r + (1.0 - psi) * Uo;
  const double dU = dpsi * L_ * r + psi * L_ - dpsi * Uo + (1.0 - psi) * dUo;
  const double ddU = ddpsi * L_ * r + 2.0 * dpsi * L_ - ddpsi * Uo - 2.0 * dpsi * dUo + (1.0 - psi) * ddUo;
  const double u = dU + dm1 * U / r;
  const double du = ddU + dm1 * dU / r - dm1 * U / (r * r);
  const double b = (du - (alpha_ - 0.5 * d_) * U - 0.5 * r * u) / u;
  return {U, u, du, b};
}

ProfilePoint profile_radial(double r, const SelfSimilarProfileRadial& spec) { return spec(r); }

// ---------------------------------------------------------------------------
// ODE residuals

namespace {

struct Stencil {
  double h;
  double d1(const double* f) const { return (f[0] - 8.0 * f[1] + 8.0 * f[3] - f[4]) / (12.0 * h); }
  double d2(const double* f) const {
    return (-f[0] + 16.0 * f[1] - 30.0 * f[2] + 16.0 * f[3] - f[4]) / (12.0 * h * h);
  }
};

}  // namespace

double profile_ode_residual(const SelfSimilarProfile1D& profile, double y, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("profile_ode_residual: h must be positive");
  double u[5], bu[5];
  for (int k = 0; k < 5; ++k) {
    const ProfilePoint p = profile(y + (k - 2) * h);
    u[k] = p.u;
    bu[k] = p.b * p.u;
  }
  const Stencil s{h};
  return SelfSimilarProfile1D::alpha * u[2] + 0.5 * y * s.d1(u) + s.d1(bu) - s.d2(u);
}

double profile_ode_residual(const SelfSimilarProfileRadial& profile, double r, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("profile_ode_residual: h must be positive");
  if (!(r > 0.0)) throw std::invalid_argument("profile_ode_residual: radial residual needs r > 0");
  // Reflection through the origin: u even, b odd.
  double u[5], bu[5];
  for (int k = 0; k < 5; ++k) {
    const double rk = r + (k - 2) * h;
    const ProfilePoint p = profile(std::abs(rk));
    const double sign = rk < 0.0 ? -1.0 : 1.0;
    u[k] = p.u;
    bu[k] = sign * p.b * p.u;
  }
  const Stencil s{h};
  const int d = profile.dimension();
  const double dm1 = d - 1.0;
  const double du = s.d1(u);
  // div(y u) = d u + r u';  div(b u) = (bu)' + (d-1) bu / r;  Lap u = u'' + (d-1) u' / r.
  return (profile.alpha() - 0.5 * d) * u[2] + 0.5 * (d * u[2] + r * du) + s.d1(bu) + dm1 * bu[2] / r -
         s.d2(u) - dm1 * du / r;
}

// ---------------------------------------------------------------------------
// Self-similar solution and drift

namespace {

double time_to_blowup(double t, const char* who) {
  if (!(t < 1.0)) throw std::domain_error(std::string(who) + ": t must be < 1");
  return 1.0 - t;
}

}  // namespace

double selfsim_solution(const SelfSimilarProfile1D& profile, double t, double x) {
  const double s = time_to_blowup(t, "selfsim_solution");
  const double root = std::sqrt(s);
  return std::pow(s, -SelfSimilarProfile1D::alpha) * profile(x / root).u;
}

double selfsim_solution(const SelfSimilarProfileRadial& profile, double t, double r) {
  const double s = time_to_blowup(t, "selfsim_solution");
  const double root = std::sqrt(s);
  return std::pow(s, -profile.alpha()) * profile(std::abs(r) / root).u;
}

double selfsim_velocity(const SelfSimilarProfile1D& profile, double t, double x) {
  const double s = time_to_blowup(t, "selfsim_velocity");
  const double root = std::sqrt(s);
  return profile(x / root).b / root;
}

double selfsim_velocity(const SelfSimilarProfileRadial& profile, double t, double r) {
  const double s = time_to_blowup(t, "selfsim_velocity");
  const double root = std::sqrt(s);
  const double sign = r < 0.0 ? -1.0 : 1.0;
  return sign * profile(std::abs(r) / root).b / root;
}

namespace {

template <class Profile>
double selfsim_norm_impl(const Profile& profile, double t, double p, const SpatialGrid& grid, int d) {
  if (!(p >= 1.0)) throw std::invalid_argument("selfsim_lp_norm: p must be >= 1");
  const ScalarField field = ScalarField::sample(grid, [&](double x) { return selfsim_solution(profile, t, x); });
  if (p == kInf) return lp_norm(field, p);
  double inner = std::pow(lp_norm(field, p), p);
  // Tail: x = X e^s, dx = x ds; both sides of the line, sigma x^{d-1} radially.
  const double X = grid.extent();
  const double weight = grid.kind() == GridKind::Line ? 2.0 : sphere_area(d);
  auto f = [&](double s) {
    const double x = X * std::exp(s);
    return weight * std::pow(std::abs(selfsim_solution(profile, t, x)), p) * std::pow(x, d);
  };
  const double tail = detail::simpson(f, 0.0, 200.0, 40001);
  return std::pow(inner + tail, 1.0 / p);
}

}  // namespace

double selfsim_lp_norm(const SelfSimilarProfile1D& profile, double t, double p, const SpatialGrid& grid) {
  if (grid.kind() != GridKind::Line) throw std::invalid_argument("selfsim_lp_norm: 1D profile needs a Line grid");
  return selfsim_norm_impl(profile, t, p, grid, 1);
}

double selfsim_lp_norm(const SelfSimilarProfileRadial& profile, double t, double p, const SpatialGrid& grid) {
  if (grid.kind() != GridKind::Radial || grid.dimension() != profile.dimension())
    throw std::invalid_argument("selfsim_lp_norm: radial profile needs a Radial grid of the same dimension");
  return selfsim_norm_impl(profile, t, p, grid, profile.dimension());
}

}  // namespace advdiff
