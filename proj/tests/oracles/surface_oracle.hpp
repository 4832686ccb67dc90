#pragma once

// Second, independently written copy of the variational surface and a dense
// brute-force grid minimizer.

#include <cmath>
#include <limits>

namespace oracle {

struct SurfaceCoefficients {
  double c1, vhat0, gap, dv_over_eta, delta, lambda, n0, n_plus, n;
};

inline double surface(double x, double y, const SurfaceCoefficients& s) {
  const double rho = x * x + y * y;
  const double shift = x - std::sqrt(s.n_plus);
  return s.c1 * shift * shift + s.vhat0 * rho * rho / 2.0 - (s.gap + s.dv_over_eta) * rho + s.delta * y * y -
         2.0 * std::fabs(s.lambda) * std::sqrt(s.n) * y;
}

// The unreduced expression with a complex condensate amplitude y e^{i phi}:
// delta |w|^2 + lambda sqrt(n) (w + conj w) replaces the last two terms.
inline double surface_with_phase(double x, double y, double phi, const SurfaceCoefficients& s) {
  const double rho = x * x + y * y;
  const double shift = x - std::sqrt(s.n_plus);
  return s.c1 * shift * shift + s.vhat0 * rho * rho / 2.0 - (s.gap + s.dv_over_eta) * rho + s.delta * y * y +
         s.lambda * std::sqrt(s.n) * 2.0 * y * std::cos(phi);
}

struct GridMin {
  double x, y, value;
};

inline GridMin dense_grid_min(const SurfaceCoefficients& s, double x_max, double y_max, int points) {
  GridMin best{0.0, 0.0, std::numeric_limits<double>::infinity()};
  for (int j = 0; j < points; ++j)
    for (int i = 0; i < points; ++i) {
      const double x = x_max * i / (points - 1);
      const double y = y_max * j / (points - 1);
      const double v = surface(x, y, s);
      if (v < best.value) best = {x, y, v};
    }
  return best;
}

}  // namespace oracle
