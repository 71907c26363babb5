#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace advdiff::detail {

/// Composite Simpson rule on [a, b] with n nodes (n odd, >= 3).
template <class F>
double simpson(F&& f, double a, double b, std::size_t n) {
  if (n < 3) throw std::invalid_argument("simpson: need at least 3 nodes");
  if (n % 2 == 0) ++n;
  const double h = (b - a) / static_cast<double>(n - 1);
  double sum = f(a) + f(b);
  for (std::size_t i = 1; i + 1 < n; ++i) sum += (i % 2 ? 4.0 : 2.0) * f(a + static_cast<double>(i) * h);
  return sum * h / 3.0;
}

/// Golden-section search for the minimiser of a unimodal f on [a, b].
template <class F>
double golden_section_min(F&& f, double a, double b, double tol = 1e-13) {
  constexpr double invphi = 0.6180339887498949;
  double c = b - invphi * (b - a), d = a + invphi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol * (1.0 + std::abs(a) + std::abs(b))) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace advdiff::detail
