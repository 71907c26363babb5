#pragma once

// Space-time norms (int ||b(t)||_q^r dt)^{1/r} of drift descriptors.

#include <cstddef>
#include <vector>

#include "advdiff/domain.hpp"
#include "advdiff/velocity.hpp"

namespace advdiff {

/// ||b(t, .)||_q on `grid` (radial weight on Radial grids).
double velocity_lq_norm(const VelocityFieldSpec& b, double t, const SpatialGrid& grid, double q);

/// Quadrature nodes on [t0, t1]: uniform, or geometrically clustered toward
/// the singular time T of `b` (t_k = T - (T - t0) rho^k) when it has one.
std::vector<double> mixed_norm_time_nodes(const VelocityFieldSpec& b, double t0, double t1, std::size_t nt);

/// Trapezoid in time over `nt` nodes of ||b(t)||_q^r; r = inf is the node maximum.
/// Rejects t1 at or beyond the singular time of `b`.
double mixed_norm(const VelocityFieldSpec& b, double r, double q, double t0, double t1,
                  const SpatialGrid& grid, std::size_t nt);

}  // namespace advdiff
