#pragma once

// Cutoff primitives shared by the counterexample constructions.

namespace advdiff {

/// Quintic smoothstep s(x) = 6x^5 - 15x^4 + 10x^3 clamped to [0, 1]; C^2.
double smoothstep5(double x) noexcept;
double smoothstep5_derivative(double x) noexcept;

/// phi(y) = 1 on [0,1], 0 on [2,inf), 1 - s(y-1) in between.
/// Decreasing, C^2, Lipschitz constant 15/8.
double cutoff_phi(double y) noexcept;
double cutoff_phi_derivative(double y) noexcept;

/// Value and first two derivatives of a transition profile.
struct Transition {
  double value;
  double d1;
  double d2;
};

/// C-infinity transition from 0 (x <= 0) to 1 (x >= 1):
/// S(x) = 1 / (1 + exp(c (1/x - 1/(1-x)))). All derivatives vanish at both ends.
Transition smooth_transition(double x, double steepness = 1.5) noexcept;

}  // namespace advdiff
