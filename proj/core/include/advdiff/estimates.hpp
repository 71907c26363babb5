#pragma once

// Exponent-regime classification and the quantitative inequality toolkit:
// Gagliardo-Nirenberg-Ladyzhenskaya ratios, Gronwall envelopes, L^1-L^inf
// interpolation and the parabolic scaling.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "advdiff/domain.hpp"
#include "advdiff/velocity.hpp"

namespace advdiff {

enum class Regime { EnergyEstimate, StrictDuhamel, Borderline, BlowupPossible, OutsideStatedRange };

std::string to_string(Regime regime);

struct RegimeClassification {
  ExponentTriple triple;
  double sum;
  bool energy_estimate;
  bool strict_duhamel;
  bool borderline;
  bool blowup_possible;
  /// Priority: Borderline, BlowupPossible, EnergyEstimate, StrictDuhamel.
  Regime regime;
  /// GNL exponent d/q of the energy argument (EnergyEstimate only).
  std::optional<double> gnl_alpha;
  /// Admissible beta in (lo, 1/2) and the midpoint choice (BlowupPossible only).
  std::optional<std::pair<double, double>> beta_interval;
  std::optional<double> beta_choice;
};

/// Sums within 1e-12 of 1 count as lying on the critical line.
RegimeClassification classify(const ExponentTriple& triple);

/// ||u||_p / (||grad u||_2^a ||u||_2^{1-a}), a = d (1/2 - 1/p); central-difference gradient.
double gnl_ratio(const ScalarField& field, double p);

/// GNL exponent a = d (1/2 - 1/p); throws outside [0, 1] (and a > 1/2 for d = 1).
double gnl_exponent(int d, double p);

/// Mixtures of 1-4 Gaussians: centers in [-5, 5], widths in [0.2, 2],
/// amplitudes in [-1, 1]. On Radial grids the center enters as |center|.
std::vector<ScalarField> gnl_corpus(const SpatialGrid& grid, std::uint64_t seed = 42, std::size_t count = 100);

struct GnlConstant {
  double p;
  double max_ratio;
  double constant;  // 1.1 * max_ratio
  std::uint64_t seed;
  std::size_t corpus_size;
};

GnlConstant empirical_gnl_constant(const SpatialGrid& grid, double p, std::uint64_t seed = 42,
                                   std::size_t count = 100);

/// Constants of the energy argument for level gamma >= 1 (gamma = 1: L^2).
struct EnergyConstants {
  double alpha;        // d / q
  double p;            // 2q / (q - 2)
  double Q;            // 2 / (1 - alpha), time exponent on ||b||_q
  double young_K;      // eps^{-Q} / Q with eps^P / P = 1/2, P = 2 / (1 + alpha)
  double gnl_constant;
  double gamma;
  double c_eff;        // young_K C_GNL^Q (2 gamma - 1) / gamma^2
};

/// Requires an EnergyEstimate triple with alpha < 1.
EnergyConstants energy_constants(const ExponentTriple& triple, double gnl_constant, double gamma = 1.0);

struct GronwallInputs {
  const SpatialGrid* b_grid;   // grid for ||b(t)||_q
  double gnl_constant;
  std::size_t substeps = 16;   // trapezoid sub-intervals between output times
};

/// t -> u0_norm exp(C_eff int_0^t ||b(s)||_q^Q ds) on `t_grid` (increasing, t_grid[0] >= 0).
NormSeries gronwall_bound(const VelocityFieldSpec& b, const ExponentTriple& triple, double u0_l2,
                          std::span<const double> t_grid, const GronwallInputs& inputs);

/// Same envelope for ||u(t)||_{L^{2 gamma}} with the level-gamma constant.
NormSeries higher_norm_bound(const VelocityFieldSpec& b, const ExponentTriple& triple, double gamma,
                             double u0_l2gamma, std::span<const double> t_grid, const GronwallInputs& inputs);

/// u0_linf^{(p-1)/p} u0_l1^{1/p}.
double interpolation_bound(double u0_l1, double u0_linf, double p);

/// b_lambda(t, x) = sqrt(lambda) b(lambda t, sqrt(lambda) x); singular time T / lambda.
VelocityFieldSpec scaling_transform(const VelocityFieldSpec& b, double lambda);

/// u_lambda(t, x) = u(lambda t, sqrt(lambda) x).
DriftFunction scaling_transform_solution(DriftFunction u, double lambda);

/// Exponent e with ||b_lambda||_{L^r(0,T/lambda; L^q)} = lambda^e ||b||_{L^r(0,T; L^q)}: (1 - 2/r - d/q) / 2.
double scaling_norm_exponent(const ExponentTriple& triple);

}  // namespace advdiff
