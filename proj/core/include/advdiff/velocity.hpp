#pragma once

// Closed-form, time-dependent drift descriptors evaluable at any (t, x).

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>

#include "advdiff/counterexamples.hpp"

namespace advdiff {

enum class VelocityFamily { Zero, GaussianPerturbation, SelfSimilar1D, SelfSimilarRadial, Custom };

std::string to_string(VelocityFamily family);

/// Signed (Line) or radial (d >= 2) drift component b(t, x).
using DriftFunction = std::function<double(double t, double x)>;

struct CustomDrift {
  std::string name;
  std::map<std::string, double> params;
  DriftFunction eval;
  int dimension = 1;
  /// Time at which the field is singular (evaluation forbidden there and beyond).
  std::optional<double> singular_time;
};

class VelocityFieldSpec {
 public:
  static VelocityFieldSpec zero(int d = 1);
  static VelocityFieldSpec gaussian(const GaussianPerturbationSpec& spec);
  static VelocityFieldSpec selfsim_1d();
  static VelocityFieldSpec selfsim_radial(int d, double cutoff_steepness = 1.5);
  static VelocityFieldSpec custom(CustomDrift drift);

  /// Stationary b(x) = -strength * x * phi(|x| / radius): smooth, compactly supported.
  static VelocityFieldSpec compact_bump(double strength, double radius);

  VelocityFamily family() const noexcept { return family_; }
  int dimension() const noexcept { return d_; }
  const std::string& name() const noexcept { return name_; }

  /// True for the three constructions blowing up at t = 1.
  bool singular_at_one() const noexcept { return singular_ && *singular_ == 1.0; }
  std::optional<double> singular_time() const noexcept { return singular_; }
  bool is_zero() const noexcept { return family_ == VelocityFamily::Zero; }

  /// Parameters echoed into manifests.
  const std::map<std::string, double>& params() const noexcept { return params_; }

  const GaussianPerturbationSpec* gaussian_spec() const noexcept;
  const SelfSimilarProfileRadial* radial_profile() const noexcept;

  /// Throws std::domain_error at or beyond the singular time.
  double operator()(double t, double x) const;
  void sample(double t, std::span<const double> xs, std::span<double> out) const;

 private:
  VelocityFieldSpec() = default;
  void check_time(double t) const;

  VelocityFamily family_ = VelocityFamily::Zero;
  int d_ = 1;
  std::string name_ = "zero";
  std::map<std::string, double> params_;
  std::optional<double> singular_;
  GaussianPerturbationSpec gaussian_{};
  std::shared_ptr<const SelfSimilarProfileRadial> radial_;
  DriftFunction custom_;
};

}  // namespace advdiff
