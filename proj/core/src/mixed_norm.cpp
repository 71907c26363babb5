#include "advdiff/mixed_norm.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace advdiff {

double velocity_lq_norm(const VelocityFieldSpec& b, double t, const SpatialGrid& grid, double q) {
  const std::vector<double> xs = grid.nodes();
  std::vector<double> values(xs.size());
  b.sample(t, xs, values);
  return lp_norm(grid, values, q);
}

std::vector<double> mixed_norm_time_nodes(const VelocityFieldSpec& b, double t0, double t1, std::size_t nt) {
  if (nt < 2) throw std::invalid_argument("mixed_norm: nt must be >= 2");
  if (!(t0 >= 0.0 && t0 < t1)) throw std::invalid_argument("mixed_norm: need 0 <= t0 < t1");
  const auto sing = b.singular_time();
  if (sing && !(t1 < *sing))
    throw std::domain_error("mixed_norm: time window touches the singular time of the field");
  std::vector<double> t(nt);
  if (sing) {
    const double T = *sing;
    const double rho = std::pow((T - t1) / (T - t0), 1.0 / static_cast<double>(nt - 1));
    for (std::size_t k = 0; k < nt; ++k) t[k] = T - (T - t0) * std::pow(rho, static_cast<double>(k));
  } else {
    const double dt = (t1 - t0) / static_cast<double>(nt - 1);
    for (std::size_t k = 0; k < nt; ++k) t[k] = t0 + static_cast<double>(k) * dt;
  }
  t.front() = t0;
  t.back() = t1;
  return t;
}

double mixed_norm(const VelocityFieldSpec& b, double r, double q, double t0, double t1,
                  const SpatialGrid& grid, std::size_t nt) {
  if (!(r >= 1.0) || !(q >= 1.0)) throw std::invalid_argument("mixed_norm: exponents must be >= 1");
  if (grid.kind() == GridKind::Radial && grid.dimension() != b.dimension())
    throw std::invalid_argument("mixed_norm: grid dimension does not match the field");
  const std::vector<double> t = mixed_norm_time_nodes(b, t0, t1, nt);
  std::vector<double> norms(nt);
  for (std::size_t k = 0; k < nt; ++k) norms[k] = velocity_lq_norm(b, t[k], grid, q);
  if (r == kInf) return *std::max_element(norms.begin(), norms.end());
  double sum = 0.0;
  for (std::size_t k = 0; k + 1 < nt; ++k)
    sum += 0.5 * (t[k + 1] - t[k]) * (std::pow(norms[k], r) + std::pow(norms[k + 1], r));
  return std::pow(sum, 1.0 / r);
}

}  // namespace advdiff
