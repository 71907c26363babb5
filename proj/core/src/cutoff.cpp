#include "advdiff/cutoff.hpp"

#include <cmath>

namespace advdiff {

double smoothstep5(double x) noexcept {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  return x * x * x * (10.0 + x * (-15.0 + 6.0 * x));
}

double smoothstep5_derivative(double x) noexcept {
  if (x <= 0.0 || x >= 1.0) return 0.0;
  const double w = x * (1.0 - x);
  return 30.0 * w * w;
}

double cutoff_phi(double y) noexcept { return 1.0 - smoothstep5(y - 1.0); }

double cutoff_phi_derivative(double y) noexcept { return -smoothstep5_derivative(y - 1.0); }

Transition smooth_transition(double x, double c) noexcept {
  if (x <= 0.0) return {0.0, 0.0, 0.0};
  if (x >= 1.0) return {1.0, 0.0, 0.0};
  const double y = 1.0 - x;
  const double q = c * (1.0 / x - 1.0 / y);
  const double dq = -c * (1.0 / (x * x) + 1.0 / (y * y));
  const double ddq = 2.0 * c * (1.0 / (x * x * x) - 1.0 / (y * y * y));
  // S = 1/(1+e^q) = (1 - tanh(q/2))/2, S(1-S) = sech^2(q/2)/4.
  const double half = 0.5 * q;
  const double s = 0.5 * (1.0 - std::tanh(half));
  double ss = 0.0;
  if (std::abs(half) < 350.0) {
    const double ch = std::cosh(half);
    ss = 0.25 / (ch * ch);
  }
  const double d1 = -dq * ss;
  const double d2 = -ddq * ss - dq * d1 * (1.0 - 2.0 * s);
  return {s, d1, d2};
}

}  // namespace advdiff
