#include "advdiff/estimates.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "advdiff/counterexamples.hpp"
#include "advdiff/mixed_norm.hpp"

namespace advdiff {

std::string to_string(Regime regime) {
  switch (regime) {
    case Regime::EnergyEstimate: return "EnergyEstimate";
    case Regime::StrictDuhamel: return "StrictDuhamel";
    case Regime::Borderline: return "Borderline";
    case Regime::BlowupPossible: return "BlowupPossible";
    case Regime::OutsideStatedRange: return "OutsideStatedRange";
  }
  return "unknown";
}

RegimeClassification classify(const ExponentTriple& triple) {
  const double r = triple.r, q = triple.q;
  const int d = triple.d;
  const double sum = triple.scaling_sum();
  const bool on_line = std::abs(sum - 1.0) <= 1e-12;
  const bool below = sum < 1.0 && !on_line;
  const bool above = sum > 1.0 && !on_line;

  RegimeClassification c{triple, sum, false, false, false, false, Regime::OutsideStatedRange, {}, {}, {}};
  if (below || on_line) {
    if (d >= 2)
      c.energy_estimate = (r >= 2.0 && r < kInf && q > d) || (r == kInf && q > d);
    else
      c.energy_estimate = r >= 2.0 && r <= 4.0 && q >= 2.0;
  }
  c.strict_duhamel = below && r >= 2.0 && r < kInf && q > d;
  c.borderline = r == kInf && q == d;
  c.blowup_possible = above;

  if (c.borderline)
    c.regime = Regime::Borderline;
  else if (c.blowup_possible)
    c.regime = Regime::BlowupPossible;
  else if (c.energy_estimate)
    c.regime = Regime::EnergyEstimate;
  else if (c.strict_duhamel)
    c.regime = Regime::StrictDuhamel;

  if (c.energy_estimate) c.gnl_alpha = d * reciprocal(q);
  if (c.blowup_possible) {
    c.beta_interval = std::make_pair(beta_threshold(r, q, d), 0.5);
    c.beta_choice = choose_beta(r, q, d);
  }
  return c;
}

// ---------------------------------------------------------------------------
// GNL

double gnl_exponent(int d, double p) {
  if (!(p >= 2.0)) throw std::invalid_argument("gnl_exponent: p must be >= 2");
  const double a = d * (0.5 - reciprocal(p));
  if (a > 1.0) throw std::invalid_argument("gnl_exponent: alpha = d(1/2 - 1/p) exceeds 1");
  if (d == 1 && a > 0.5) throw std::invalid_argument("gnl_exponent: alpha > 1/2 in d = 1");
  return a;
}

double gnl_ratio(const ScalarField& field, double p) {
  const SpatialGrid& grid = field.grid();
  const double a = gnl_exponent(grid.dimension(), p);
  const auto u = field.values();
  const std::size_t n = u.size();
  const double h = grid.spacing();
  std::vector<double> grad(n);
  grad[0] = grid.kind() == GridKind::Radial ? 0.0 : (u[1] - u[0]) / h;
  for (std::size_t i = 1; i + 1 < n; ++i) grad[i] = (u[i + 1] - u[i - 1]) / (2.0 * h);
  grad[n - 1] = (u[n - 1] - u[n - 2]) / h;

  const double l2 = lp_norm(grid, u, 2.0);
  if (!(l2 > 0.0)) throw std::invalid_argument("gnl_ratio: field has zero L^2 norm");
  const double grad_l2 = lp_norm(grid, grad, 2.0);
  if (a > 0.0 && !(grad_l2 > 0.0)) throw std::invalid_argument("gnl_ratio: field has zero gradient");
  const double lp = lp_norm(grid, u, p);
  return lp / (std::pow(grad_l2, a) * std::pow(l2, 1.0 - a));
}

std::vector<ScalarField> gnl_corpus(const SpatialGrid& grid, std::uint64_t seed, std::size_t count) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> components(1, 4);
  std::uniform_real_distribution<double> center(-5.0, 5.0), width(0.2, 2.0), amplitude(-1.0, 1.0);
  const bool radial = grid.kind() == GridKind::Radial;
  std::vector<ScalarField> corpus;
  corpus.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    struct Bump {
      double c, w, a;
    };
    std::vector<Bump> bumps(static_cast<std::size_t>(components(rng)));
    for (auto& b : bumps) {
      b.c = center(rng);
      b.w = width(rng);
      b.a = amplitude(rng);
      if (radial) b.c = std::abs(b.c);
    }
    corpus.push_back(ScalarField::sample(grid, [&](double x) {
      double v = 0.0;
      for (const auto& b : bumps) v += b.a * std::exp(-(x - b.c) * (x - b.c) / (b.w * b.w));
      return v;
    }));
  }
  return corpus;
}

GnlConstant empirical_gnl_constant(const SpatialGrid& grid, double p, std::uint64_t seed, std::size_t count) {
  double max_ratio = 0.0;
  for (const auto& f : gnl_corpus(grid, seed, count)) max_ratio = std::max(max_ratio, gnl_ratio(f, p));
  return {p, max_ratio, 1.1 * max_ratio, seed, count};
}

// ---------------------------------------------------------------------------
// Gronwall envelopes

EnergyConstants energy_constants(const ExponentTriple& triple, double gnl_constant, double gamma) {
  const RegimeClassification c = classify(triple);
  if (!c.energy_estimate) throw std::invalid_argument("energy_constants: triple is not in the energy-estimate range");
  if (!(gamma >= 1.0)) throw std::invalid_argument("energy_constants: gamma must be >= 1");
  if (!(gnl_constant > 0.0)) throw std::invalid_argument("energy_constants: GNL constant must be positive");
  EnergyConstants k{};
  k.alpha = *c.gnl_alpha;
  if (!(k.alpha < 1.0)) throw std::invalid_argument("energy_constants: alpha = 1 (q = d) is excluded");
  k.p = triple.q == kInf ? 2.0 : (triple.q == 2.0 ? kInf : 2.0 * triple.q / (triple.q - 2.0));
  k.Q = 2.0 / (1.0 - k.alpha);
  const double P = 2.0 / (1.0 + k.alpha);
  const double eps = std::pow(0.5 * P, 1.0 / P);
  k.young_K = std::pow(eps, -k.Q) / k.Q;
  k.gnl_constant = gnl_constant;
  k.gamma = gamma;
  k.c_eff = k.young_K * std::pow(gnl_constant, k.Q) * (2.0 * gamma - 1.0) / (gamma * gamma);
  return k;
}

namespace {

NormSeries envelope(const VelocityFieldSpec& b, const ExponentTriple& triple, double p_label, double u0_norm,
                    std::span<const double> t_grid, const GronwallInputs& inputs, const EnergyConstants& k) {
  if (!inputs.b_grid) throw std::invalid_argument("gronwall_bound: missing grid for the drift norms");
  if (!(u0_norm > 0.0)) throw std::invalid_argument("gronwall_bound: initial norm must be positive");
  if (inputs.substeps < 1) throw std::invalid_argument("gronwall_bound: substeps must be >= 1");
  NormSeries out(p_label);
  auto integrand = [&](double t) {
    return b.is_zero() ? 0.0 : std::pow(velocity_lq_norm(b, t, *inputs.b_grid, triple.q), k.Q);
  };
  double t_prev = 0.0, f_prev = integrand(0.0), acc = 0.0;
  for (double t : t_grid) {
    if (t < t_prev) throw std::invalid_argument("gronwall_bound: time grid must be increasing and >= 0");
    const double dt = (t - t_prev) / static_cast<double>(inputs.substeps);
    for (std::size_t j = 1; j <= inputs.substeps && dt > 0.0; ++j) {
      const double f = integrand(t_prev + static_cast<double>(j) * dt);
      acc += 0.5 * dt * (f_prev + f);
      f_prev = f;
    }
    t_prev = t;
    out.push(t, u0_norm * std::exp(k.c_eff * acc));
  }
  return out;
}

}  // namespace

NormSeries gronwall_bound(const VelocityFieldSpec& b, const ExponentTriple& triple, double u0_l2,
                          std::span<const double> t_grid, const GronwallInputs& inputs) {
  const EnergyConstants k = energy_constants(triple, inputs.gnl_constant, 1.0);
  return envelope(b, triple, 2.0, u0_l2, t_grid, inputs, k);
}

NormSeries higher_norm_bound(const VelocityFieldSpec& b, const ExponentTriple& triple, double gamma,
                             double u0_l2gamma, std::span<const double> t_grid, const GronwallInputs& inputs) {
  const EnergyConstants k = energy_constants(triple, inputs.gnl_constant, gamma);
  return envelope(b, triple, 2.0 * gamma, u0_l2gamma, t_grid, inputs, k);
}

double interpolation_bound(double u0_l1, double u0_linf, double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("interpolation_bound: p must be >= 1");
  if (!(u0_l1 > 0.0 && u0_linf > 0.0)) throw std::invalid_argument("interpolation_bound: norms must be positive");
  if (p == kInf) return u0_linf;
  return std::pow(u0_linf, (p - 1.0) / p) * std::pow(u0_l1, 1.0 / p);
}

// ---------------------------------------------------------------------------
// Scaling

VelocityFieldSpec scaling_transform(const VelocityFieldSpec& b, double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw std::invalid_argument("scaling_transform: lambda must be positive");
  CustomDrift drift;
  drift.name = b.name() + "_scaled";
  drift.params = b.params();
  drift.params["lambda"] = lambda;
  drift.dimension = b.dimension();
  if (b.singular_time()) drift.singular_time = *b.singular_time() / lambda;
  const double root = std::sqrt(lambda);
  drift.eval = [b, lambda, root](double t, double x) { return root * b(lambda * t, root * x); };
  return VelocityFieldSpec::custom(std::move(drift));
}

DriftFunction scaling_transform_solution(DriftFunction u, double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw std::invalid_argument("scaling_transform: lambda must be positive");
  const double root = std::sqrt(lambda);
  return [u = std::move(u), lambda, root](double t, double x) { return u(lambda * t, root * x); };
}

double scaling_norm_exponent(const ExponentTriple& triple) { return 0.5 * (1.0 - triple.scaling_sum()); }

}  // namespace advdiff
