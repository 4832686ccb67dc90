#include "mfbose/special.hpp"

#include <cmath>
#include <numbers>

#include "mfbose/errors.hpp"

namespace mfbose {

namespace {

// Neumaier-compensated partial sum of k^{-s} for k = 1..n, summed from the
// small end so the tail is not swamped by the leading terms.
double partial_zeta(double s, long n) {
  double sum = 0.0;
  double comp = 0.0;
  for (long k = n; k >= 1; --k) {
    const double term = std::pow(static_cast<double>(k), -s);
    const double t = sum + term;
    if (std::abs(sum) >= std::abs(term))
      comp += (sum - t) + term;
    else
      comp += (term - t) + sum;
    sum = t;
  }
  return sum + comp;
}

}  // namespace

double zeta_richardson(double s, int levels, long base) {
  if (!(s > 1.0)) throw InvalidArgument("zeta_richardson requires s > 1");
  if (levels < 1 || base < 1) throw InvalidArgument("zeta_richardson: bad levels/base");

  // Error exponents in N: (s-1), s, s+1, s+3, s+5, ... ; with N -> 4N the
  // error term N^{-q} shrinks by 4^{-q}.
  std::vector<double> exponents{s - 1.0, s, s + 1.0};
  while (static_cast<int>(exponents.size()) < levels) exponents.push_back(exponents.back() + 2.0);

  std::vector<std::vector<double>> table(levels);
  long n = base;
  for (int j = 0; j < levels; ++j, n *= 4) {
    table[j].resize(j + 1);
    table[j][0] = partial_zeta(s, n);
    for (int k = 1; k <= j; ++k) {
      const double factor = std::pow(4.0, exponents[k - 1]);
      table[j][k] = (factor * table[j][k - 1] - table[j - 1][k - 1]) / (factor - 1.0);
    }
  }
  return table.back().back();
}

double zeta_three_halves() {
  static const double value = zeta_richardson(1.5);
  return value;
}

QuadratureRule gauss_legendre(int order, double a, double b) {
  if (order < 1) throw InvalidArgument("gauss_legendre: order must be >= 1");
  QuadratureRule rule;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const int m = (order + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = 0.0;
      for (int k = 1; k <= order; ++k) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p2) / k;
      }
      dp = order * (x * p0 - p1) / (x * x - 1.0);
      const double dx = p0 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute the derivative at the converged node.
    double p0 = 1.0;
    double p1 = 0.0;
    for (int k = 1; k <= order; ++k) {
      const double p2 = p1;
      p1 = p0;
      p0 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p2) / k;
    }
    dp = order * (x * p0 - p1) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = mid - half * x;
    rule.nodes[order - 1 - i] = mid + half * x;
    rule.weights[i] = half * w;
    rule.weights[order - 1 - i] = half * w;
  }
  return rule;
}

}  // namespace mfbose
