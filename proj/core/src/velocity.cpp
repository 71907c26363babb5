#include "advdiff/velocity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "advdiff/cutoff.hpp"

namespace advdiff {

std::string to_string(VelocityFamily family) {
  switch (family) {
    case VelocityFamily::Zero: return "zero";
    case VelocityFamily::GaussianPerturbation: return "gaussian";
    case VelocityFamily::SelfSimilar1D: return "selfsim1d";
    case VelocityFamily::SelfSimilarRadial: return "selfsim_radial";
    case VelocityFamily::Custom: return "custom";
  }
  return "unknown";
}

VelocityFieldSpec VelocityFieldSpec::zero(int d) {
  if (d < 1) throw std::invalid_argument("VelocityFieldSpec::zero: d must be >= 1");
  VelocityFieldSpec v;
  v.d_ = d;
  return v;
}

VelocityFieldSpec VelocityFieldSpec::gaussian(const GaussianPerturbationSpec& spec) {
  validate(spec);
  VelocityFieldSpec v;
  v.family_ = VelocityFamily::GaussianPerturbation;
  v.d_ = spec.d;
  v.name_ = "gaussian";
  v.gaussian_ = spec;
  v.singular_ = 1.0;
  v.params_ = {{"d", spec.d},
               {"gamma", spec.gamma},
               {"beta", spec.beta},
               {"datum_cutoff_radius", spec.datum_cutoff_radius},
               {"truncate_drift", spec.truncate_drift ? 1.0 : 0.0}};
  return v;
}

VelocityFieldSpec VelocityFieldSpec::selfsim_1d() {
  VelocityFieldSpec v;
  v.family_ = VelocityFamily::SelfSimilar1D;
  v.name_ = "selfsim1d";
  v.singular_ = 1.0;
  v.params_ = {{"alpha", SelfSimilarProfile1D::alpha},
               {"gamma", SelfSimilarProfile1D::gamma},
               {"C", SelfSimilarProfile1D::C},
               {"M", SelfSimilarProfile1D::M}};
  return v;
}

VelocityFieldSpec VelocityFieldSpec::selfsim_radial(int d, double cutoff_steepness) {
  VelocityFieldSpec v;
  v.family_ = VelocityFamily::SelfSimilarRadial;
  v.d_ = d;
  v.name_ = "selfsim_radial";
  v.radial_ = std::make_shared<const SelfSimilarProfileRadial>(d, cutoff_steepness);
  v.singular_ = 1.0;
  v.params_ = {{"d", d},
               {"alpha", v.radial_->alpha()},
               {"gamma", v.radial_->gamma()},
               {"C", v.radial_->C()},
               {"M", v.radial_->M()},
               {"L", v.radial_->L()},
               {"cutoff_steepness", cutoff_steepness}};
  return v;
}

VelocityFieldSpec VelocityFieldSpec::custom(CustomDrift drift) {
  if (!drift.eval) throw std::invalid_argument("VelocityFieldSpec::custom: empty evaluator");
  if (drift.dimension < 1) throw std::invalid_argument("VelocityFieldSpec::custom: d must be >= 1");
  VelocityFieldSpec v;
  v.family_ = VelocityFamily::Custom;
  v.d_ = drift.dimension;
  v.name_ = drift.name.empty() ? "custom" : drift.name;
  v.params_ = std::move(drift.params);
  v.singular_ = drift.singular_time;
  v.custom_ = std::move(drift.eval);
  return v;
}

VelocityFieldSpec VelocityFieldSpec::compact_bump(double strength, double radius) {
  if (!(radius > 0.0)) throw std::invalid_argument("compact_bump: radius must be positive");
  CustomDrift drift;
  drift.name = "compact";
  drift.params = {{"strength", strength}, {"radius", radius}};
  drift.eval = [strength, radius](double, double x) { return -strength * x * cutoff_phi(std::abs(x) / radius); };
  return custom(std::move(drift));
}

const GaussianPerturbationSpec* VelocityFieldSpec::gaussian_spec() const noexcept {
  return family_ == VelocityFamily::GaussianPerturbation ? &gaussian_ : nullptr;
}

const SelfSimilarProfileRadial* VelocityFieldSpec::radial_profile() const noexcept { return radial_.get(); }

void VelocityFieldSpec::check_time(double t) const {
  if (singular_ && !(t < *singular_))
    throw std::domain_error("velocity '" + name_ + "' evaluated at or beyond its singular time");
}

double VelocityFieldSpec::operator()(double t, double x) const {
  check_time(t);
  switch (family_) {
    case VelocityFamily::Zero: return 0.0;
    case VelocityFamily::GaussianPerturbation: return gaussian_velocity(gaussian_, t, x);
    case VelocityFamily::SelfSimilar1D: {
      static const SelfSimilarProfile1D profile;
      return selfsim_velocity(profile, t, x);
    }
    case VelocityFamily::SelfSimilarRadial: return selfsim_velocity(*radial_, t, x);
    case VelocityFamily::Custom: return custom_(t, x);
  }
  return 0.0;
}

void VelocityFieldSpec::sample(double t, std::span<const double> xs, std::span<double> out) const {
  if (xs.size() != out.size()) throw std::invalid_argument("VelocityFieldSpec::sample: size mismatch");
  check_time(t);
  switch (family_) {
    case VelocityFamily::Zero:
      std::fill(out.begin(), out.end(), 0.0);
      return;
    case VelocityFamily::GaussianPerturbation: {
      const double inv_s = 1.0 / (1.0 - t);
      if (!gaussian_.truncate_drift) {
        for (std::size_t i = 0; i < xs.size(); ++i) out[i] = -xs[i] * inv_s;
        return;
      }
      const double inv_w = 1.0 / (gaussian_.gamma * std::pow(1.0 - t, gaussian_.beta));
      for (std::size_t i = 0; i < xs.size(); ++i) {
        const double y = std::abs(xs[i]) * inv_w;
        out[i] = y >= 2.0 ? 0.0 : -xs[i] * inv_s * cutoff_phi(y);
      }
      return;
    }
    case VelocityFamily::SelfSimilar1D: {
      static const SelfSimilarProfile1D profile;
      const double root = std::sqrt(1.0 - t);
      for (std::size_t i = 0; i < xs.size(); ++i) out[i] = profile(xs[i] / root).b / root;
      return;
    }
    case VelocityFamily::SelfSimilarRadial: {
      const double root = std::sqrt(1.0 - t);
      for (std::size_t i = 0; i < xs.size(); ++i) {
        const double sign = xs[i] < 0.0 ? -1.0 : 1.0;
        out[i] = sign * (*radial_)(std::abs(xs[i]) / root).b / root;
      }
      return;
    }
    default:
      for (std::size_t i = 0; i < xs.size(); ++i) out[i] = (*this)(t, xs[i]);
  }
}

}  // namespace advdiff
