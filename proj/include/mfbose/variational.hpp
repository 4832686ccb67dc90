#pragma once

#include <functional>

#include "mfbose/selfconsistent.hpp"

namespace mfbose {

/// x = sqrt(N_+ / eta) (excited amplitude), y = |z| / sqrt(eta) (condensate amplitude).
struct VariationalPoint {
  double x = 0.0;
  double y = 0.0;
};

inline constexpr double kEntropyConstant = 2.0 / 27.0;

/// Coefficients of the rescaled two-variable free-energy surface.
struct SurfaceParams {
  double c1 = kEntropyConstant;
  double vhat0 = 1.0;
  double gap = 1.0;          // mu - mu_tilde
  double dv_over_eta = 0.0;  // d_v / eta
  double delta = 0.0;
  double lambda = 0.0;
  double n0 = 0.0;      // N_0 / eta
  double n_plus = 0.0;  // N_+ / eta
  double n = 0.0;       // N / eta
  double eta = 1.0;

  /// gap + d_v / eta, the coefficient of -(x^2 + y^2).
  double shifted_gap() const { return gap + dv_over_eta; }
};

/// Rescaled coefficients from a solved chemical potential; n is the leading
/// particle number gap / vhat0.
SurfaceParams make_surface_params(const ModelParams& params, const ChemPotSolution& sol, double lambda,
                                  double delta, double c1 = kEntropyConstant);

/// c1 (x - sqrt(n+))^2 + vhat0/2 (x^2+y^2)^2 - (gap + d_v/eta)(x^2+y^2) + delta y^2 - 2|lambda| sqrt(n) y
double surface_value(const VariationalPoint& pt, const SurfaceParams& sp);

/// Partial derivatives (d/dx, d/dy) of surface_value.
Eigen::Vector2d surface_gradient(const VariationalPoint& pt, const SurfaceParams& sp);

struct SurfaceGrid {
  int nx = 401;
  int ny = 401;
  double x_max = 1.0;
  double y_max = 1.0;

  double dx() const { return x_max / (nx - 1); }
  double dy() const { return y_max / (ny - 1); }
};

/// Box [0, 2 sqrt(2 gap / vhat0)] x [0, 2 (sqrt(n0) + 1)].
SurfaceGrid default_surface_grid(const SurfaceParams& sp, int resolution = 401);

struct SurfaceMinimum {
  VariationalPoint point;
  double value = 0.0;
  double projected_gradient = 0.0;
};

/// Grid argmin (ties broken toward smaller y, then smaller x), refined by
/// coordinatewise golden-section sweeps and a projected Newton polish.
/// Throws BoxTooSmall if the argmin sits on the outer edge of the box.
SurfaceMinimum minimize_surface(const SurfaceParams& sp, const SurfaceGrid& grid);

/// -gap^2/(2 vhat0) + delta n0 - 2|lambda| sqrt(n n0) - K (delta^2 + |delta||lambda|^{1/3} + |lambda|^{4/3} + 1/eta)
double analytic_lower_bound(const SurfaceParams& sp, double K);

/// The three regions of the (x, y) quadrant used to bound the surface from below.
enum class SurfaceCase {
  ExcitedHeavy = 1,     // x^2 >= 2 (gap + d_v/eta) / vhat0
  CondensateSmall = 2,  // y <= sqrt(n0) + |lambda|^{1/3}
  CondensateLarge = 3,  // the remainder
};

/// First matching case in the order 1, 2, 3.
SurfaceCase classify_surface_case(const VariationalPoint& pt, const SurfaceParams& sp);

/// Constant-free lower bound on the surface valid at every point of the case:
///   case 1: vhat0/2 y^4 + delta y^2 - 2|lambda| sqrt(n) y
///   case 2: -(gap + d_v/eta)^2/(2 vhat0) + delta y^2 - 2|lambda| sqrt(n) y
/// Case 3 has no constant-free form; its value is -inf.
double surface_case_intermediate_bound(SurfaceCase c, const VariationalPoint& pt, const SurfaceParams& sp);

/// Final per-case bounds with policy constant K:
///   case 1: -gap^2/(2 vhat0) + delta n0 - K (delta^2 + |lambda|^{4/3})
///   case 2: -gap^2/(2 vhat0) + delta n0 - 2|lambda| sqrt(n n0) - K (|delta||lambda|^{1/3} + |delta||lambda|^{2/3} + |lambda|^{4/3} + 1/eta)
///   case 3: -gap^2/(2 vhat0) + delta n0 - 2|lambda| sqrt(n n0) - K (1/eta + delta^2 + |lambda|^{4/3})
double surface_case_bound(SurfaceCase c, const SurfaceParams& sp, double K);

struct Bracket {
  double lower = 0.0;
  double upper = 0.0;

  double width() const { return upper - lower; }
  bool contains(double v, double slack = 0.0) const { return v >= lower - slack && v <= upper + slack; }
};

/// Forward and backward difference quotients of a concave function; every
/// supergradient at `at` lies between them. Throws ConcavityViolated when the
/// forward quotient exceeds the backward one by more than 1e-12 (relative).
Bracket griffith_bracket(const std::function<double(double)>& potential, double at, double step);

}  // namespace mfbose
