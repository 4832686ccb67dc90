#include "mfbose/variational.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>

#include "mfbose/errors.hpp"

namespace mfbose {

SurfaceParams make_surface_params(const ModelParams& params, const ChemPotSolution& sol, double lambda,
                                  double delta, double c1) {
  SurfaceParams sp;
  sp.c1 = c1;
  sp.vhat0 = params.vhat.vhat0();
  sp.gap = sol.gap;
  sp.dv_over_eta = params.vhat.dv() / params.eta;
  sp.delta = delta;
  sp.lambda = lambda;
  sp.n0 = sol.n0 / params.eta;
  sp.n_plus = sol.n_plus / params.eta;
  sp.n = sol.gap / sp.vhat0;
  sp.eta = params.eta;
  return sp;
}

double surface_value(const VariationalPoint& pt, const SurfaceParams& sp) {
  const double r2 = pt.x * pt.x + pt.y * pt.y;
  const double dx = pt.x - std::sqrt(sp.n_plus);
  return sp.c1 * dx * dx + 0.5 * sp.vhat0 * r2 * r2 - sp.shifted_gap() * r2 + sp.delta * pt.y * pt.y -
         2.0 * std::abs(sp.lambda) * std::sqrt(sp.n) * pt.y;
}

Eigen::Vector2d surface_gradient(const VariationalPoint& pt, const SurfaceParams& sp) {
  const double r2 = pt.x * pt.x + pt.y * pt.y;
  const double radial = 2.0 * sp.vhat0 * r2 - 2.0 * sp.shifted_gap();
  return {2.0 * sp.c1 * (pt.x - std::sqrt(sp.n_plus)) + radial * pt.x,
          radial * pt.y + 2.0 * sp.delta * pt.y - 2.0 * std::abs(sp.lambda) * std::sqrt(sp.n)};
}

namespace {

Eigen::Matrix2d surface_hessian(const VariationalPoint& pt, const SurfaceParams& sp) {
  const double r2 = pt.x * pt.x + pt.y * pt.y;
  const double base = 2.0 * sp.vhat0 * r2 - 2.0 * sp.shifted_gap();
  Eigen::Matrix2d h;
  h(0, 0) = 2.0 * sp.c1 + base + 4.0 * sp.vhat0 * pt.x * pt.x;
  h(1, 1) = base + 4.0 * sp.vhat0 * pt.y * pt.y + 2.0 * sp.delta;
  h(0, 1) = h(1, 0) = 4.0 * sp.vhat0 * pt.x * pt.y;
  return h;
}

// Gradient with components that push into an active x = 0 or y = 0 wall removed.
Eigen::Vector2d projected(const Eigen::Vector2d& g, const VariationalPoint& pt) {
  Eigen::Vector2d p = g;
  if (pt.x <= 0.0 && p(0) > 0.0) p(0) = 0.0;
  if (pt.y <= 0.0 && p(1) > 0.0) p(1) = 0.0;
  return p;
}

template <typename F>
double golden_section(F&& f, double a, double b) {
  const double inv_phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  for (int i = 0; i < 200 && (b - a) > 1e-15 * std::max(1.0, std::abs(a) + std::abs(b)); ++i) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  const double mid = 0.5 * (a + b);
  // The endpoints of the original interval are candidates too.
  return mid;
}

}  // namespace

SurfaceGrid default_surface_grid(const SurfaceParams& sp, int resolution) {
  SurfaceGrid grid;
  grid.nx = resolution;
  grid.ny = resolution;
  grid.x_max = 2.0 * std::sqrt(2.0 * std::max(sp.gap, 0.0) / sp.vhat0);
  grid.y_max = 2.0 * (std::sqrt(std::max(sp.n0, 0.0)) + 1.0);
  return grid;
}

SurfaceMinimum minimize_surface(const SurfaceParams& sp, const SurfaceGrid& grid) {
  if (grid.nx < 3 || grid.ny < 3) throw InvalidArgument("surface grid needs at least 3 points per axis");
  if (!(grid.x_max > 0.0) || !(grid.y_max > 0.0)) throw InvalidArgument("surface box must be non-degenerate");
  if (grid.x_max * grid.x_max < 4.0 * sp.gap / sp.vhat0 * (1.0 - 1e-12))
    throw BoxTooSmall("x_max^2 must be at least 4 gap / vhat0");

  const double hx = grid.dx();
  const double hy = grid.dy();
  int best_i = 0;
  int best_j = 0;
  double best = std::numeric_limits<double>::infinity();
  for (int j = 0; j < grid.ny; ++j)
    for (int i = 0; i < grid.nx; ++i) {
      const double v = surface_value({i * hx, j * hy}, sp);
      if (v < best) {
        best = v;
        best_i = i;
        best_j = j;
      }
    }
  if (best_i == grid.nx - 1 || best_j == grid.ny - 1)
    throw BoxTooSmall("surface argmin touches the outer edge of the box");

  VariationalPoint pt{best_i * hx, best_j * hy};
  // Coordinatewise golden section within one grid cell of the incumbent.
  for (int sweep = 0; sweep < 60; ++sweep) {
    const VariationalPoint before = pt;
    const double x_lo = std::max(0.0, pt.x - hx);
    const double x_hi = std::min(grid.x_max, pt.x + hx);
    const double x_new = golden_section([&](double x) { return surface_value({x, pt.y}, sp); }, x_lo, x_hi);
    if (surface_value({x_new, pt.y}, sp) <= surface_value(pt, sp)) pt.x = x_new;
    if (surface_value({0.0, pt.y}, sp) < surface_value(pt, sp) && x_lo == 0.0) pt.x = 0.0;
    const double y_lo = std::max(0.0, pt.y - hy);
    const double y_hi = std::min(grid.y_max, pt.y + hy);
    const double y_new = golden_section([&](double y) { return surface_value({pt.x, y}, sp); }, y_lo, y_hi);
    if (surface_value({pt.x, y_new}, sp) <= surface_value(pt, sp)) pt.y = y_new;
    if (surface_value({pt.x, 0.0}, sp) < surface_value(pt, sp) && y_lo == 0.0) pt.y = 0.0;
    if (std::abs(pt.x - before.x) + std::abs(pt.y - before.y) < 1e-15) break;
  }

  // Projected Newton polish on the free coordinates.
  for (int iter = 0; iter < 50; ++iter) {
    const Eigen::Vector2d g = projected(surface_gradient(pt, sp), pt);
    if (g.norm() <= 1e-12) break;
    const Eigen::Matrix2d h = surface_hessian(pt, sp);
    Eigen::Vector2d step = Eigen::Vector2d::Zero();
    const bool free_x = !(pt.x <= 0.0 && g(0) == 0.0);
    const bool free_y = !(pt.y <= 0.0 && g(1) == 0.0);
    if (free_x && free_y) {
      Eigen::LLT<Eigen::Matrix2d> llt(h);
      if (llt.info() != Eigen::Success) break;
      step = -llt.solve(g);
    } else if (free_x && h(0, 0) > 0.0) {
      step(0) = -g(0) / h(0, 0);
    } else if (free_y && h(1, 1) > 0.0) {
      step(1) = -g(1) / h(1, 1);
    } else {
      break;
    }
    const double f0 = surface_value(pt, sp);
    double t = 1.0;
    bool accepted = false;
    for (int ls = 0; ls < 40; ++ls, t *= 0.5) {
      const VariationalPoint trial{std::max(0.0, pt.x + t * step(0)), std::max(0.0, pt.y + t * step(1))};
      if (surface_value(trial, sp) <= f0) {
        pt = trial;
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
  }

  if (pt.x >= grid.x_max || pt.y >= grid.y_max)
    throw BoxTooSmall("refined surface argmin reached the outer edge of the box");
  SurfaceMinimum out;
  out.point = pt;
  out.value = surface_value(pt, sp);
  out.projected_gradient = projected(surface_gradient(pt, sp), pt).norm();
  return out;
}

double analytic_lower_bound(const SurfaceParams& sp, double K) {
  const double l = std::abs(sp.lambda);
  const double d = std::abs(sp.delta);
  return -sp.gap * sp.gap / (2.0 * sp.vhat0) + sp.delta * sp.n0 - 2.0 * l * std::sqrt(sp.n * sp.n0) -
         K * (d * d + d * std::cbrt(l) + std::pow(l, 4.0 / 3.0) + 1.0 / sp.eta);
}

SurfaceCase classify_surface_case(const VariationalPoint& pt, const SurfaceParams& sp) {
  if (pt.x * pt.x >= 2.0 * sp.shifted_gap() / sp.vhat0) return SurfaceCase::ExcitedHeavy;
  if (pt.y <= std::sqrt(sp.n0) + std::cbrt(std::abs(sp.lambda))) return SurfaceCase::CondensateSmall;
  return SurfaceCase::CondensateLarge;
}

double surface_case_intermediate_bound(SurfaceCase c, const VariationalPoint& pt, const SurfaceParams& sp) {
  const double linear = sp.delta * pt.y * pt.y - 2.0 * std::abs(sp.lambda) * std::sqrt(sp.n) * pt.y;
  switch (c) {
    case SurfaceCase::ExcitedHeavy:
      return 0.5 * sp.vhat0 * std::pow(pt.y, 4) + linear;
    case SurfaceCase::CondensateSmall:
      return -sp.shifted_gap() * sp.shifted_gap() / (2.0 * sp.vhat0) + linear;
    case SurfaceCase::CondensateLarge:
      break;
  }
  return -std::numeric_limits<double>::infinity();
}

double surface_case_bound(SurfaceCase c, const SurfaceParams& sp, double K) {
  const double l = std::abs(sp.lambda);
  const double d = std::abs(sp.delta);
  const double base = -sp.gap * sp.gap / (2.0 * sp.vhat0) + sp.delta * sp.n0;
  const double lam = -2.0 * l * std::sqrt(sp.n * sp.n0);
  const double l43 = std::pow(l, 4.0 / 3.0);
  switch (c) {
    case SurfaceCase::ExcitedHeavy:
      return base - K * (d * d + l43);
    case SurfaceCase::CondensateSmall:
      return base + lam - K * (d * std::cbrt(l) + d * std::pow(l, 2.0 / 3.0) + l43 + 1.0 / sp.eta);
    case SurfaceCase::CondensateLarge:
      return base + lam - K * (1.0 / sp.eta + d * d + l43);
  }
  return base;
}

Bracket griffith_bracket(const std::function<double(double)>& potential, double at, double step) {
  if (!(step > 0.0)) throw InvalidArgument("griffith_bracket step must be positive");
  const double center = potential(at);
  Bracket b;
  b.lower = (potential(at + step) - center) / step;
  b.upper = (center - potential(at - step)) / step;
  const double slack = 1e-12 * std::max({1.0, std::abs(b.lower), std::abs(b.upper)});
  if (b.lower > b.upper + slack)
    throw ConcavityViolated("forward difference quotient exceeds the backward one");
  return b;
}

}  // namespace mfbose
