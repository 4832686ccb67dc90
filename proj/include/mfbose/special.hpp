#pragma once

#include <vector>

namespace mfbose {

/// Riemann zeta at 3/2, from partial sums of the defining series accelerated
/// by Richardson extrapolation in h = N^{-1/2}. Accurate to ~1e-13.
double zeta_three_halves();

/// Richardson-accelerated zeta(s) for s > 1 built on N = base * 4^k partial sums.
/// The asymptotic error expansion is in powers N^{1-s}, N^{-s}, N^{-s-1}, ...
double zeta_richardson(double s, int levels = 7, long base = 16);

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Gauss-Legendre rule of the given order mapped to [a, b].
QuadratureRule gauss_legendre(int order, double a, double b);

/// [x]_+ = max(x, 0)
inline double positive_part(double x) { return x > 0.0 ? x : 0.0; }

}  // namespace mfbose
