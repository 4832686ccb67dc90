#include "mfbose/selfconsistent.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

#include "mfbose/errors.hpp"
#include "mfbose/special.hpp"

namespace mfbose {

void Interaction::set(const ModeIndex& n, double value) { coefficients_[n] = value; }

double Interaction::operator()(const ModeIndex& n) const {
  const auto it = coefficients_.find(n);
  return it == coefficients_.end() ? 0.0 : it->second;
}

double Interaction::v0() const {
  double total = 0.0;
  for (const auto& [n, value] : coefficients_) total += value;
  return total;
}

void Interaction::validate() const {
  for (const auto& [n, value] : coefficients_) {
    if (!std::isfinite(value) || value < 0.0)
      throw InvalidArgument("vhat coefficients must be finite and non-negative");
    if ((*this)(ModeIndex(-n)) != value) throw InvalidArgument("vhat must satisfy vhat(p) = vhat(-p)");
  }
  if (!(vhat0() > 0.0)) throw InvalidArgument("vhat(0) must be positive");
}

void ModelParams::validate() const {
  if (!(beta > 0.0) || !std::isfinite(beta)) throw InvalidArgument("beta must be positive and finite");
  if (!std::isfinite(mu)) throw InvalidArgument("mu must be finite");
  if (!(eta > 0.0) || !std::isfinite(eta)) throw InvalidArgument("eta must be positive and finite");
  vhat.validate();
}

namespace {

struct Evaluation {
  double f = 0.0;
  double n0 = 0.0;
  double n_plus = 0.0;
  double scale = 1.0;
};

using Residual = std::function<Evaluation(double)>;

struct Root {
  double x = 0.0;
  Evaluation at;
  double lo = 0.0;
  double hi = 0.0;
};

// f is strictly increasing with f(lo) < 0 < f(hi). Bisection down to a small
// relative width, then safeguarded secant steps.
Root increasing_root(const Residual& f, double lo, Evaluation flo, double hi, Evaluation fhi, double tol) {
  Root best{lo, flo, lo, hi};
  auto consider = [&](double x, const Evaluation& e) {
    if (std::abs(e.f) < std::abs(best.at.f)) {
      best.x = x;
      best.at = e;
    }
  };
  consider(hi, fhi);
  auto converged = [&](const Evaluation& e) { return std::abs(e.f) <= tol * std::max(1.0, e.scale); };
  auto collapsed = [&]() {
    const double mid = 0.5 * (lo + hi);
    return !(mid > lo && mid < hi);
  };

  for (int iter = 0; iter < 2000; ++iter) {
    if (converged(best.at) || collapsed()) break;
    const double width = hi - lo;
    double x = 0.5 * (lo + hi);
    const bool polish = width <= 1e-8 * std::max(1.0, std::abs(x));
    if (polish && iter % 3 != 2) {
      const double secant = hi - fhi.f * width / (fhi.f - flo.f);
      if (secant > lo && secant < hi) x = secant;
    }
    const Evaluation fx = f(x);
    consider(x, fx);
    if (fx.f < 0.0) {
      lo = x;
      flo = fx;
    } else {
      hi = x;
      fhi = fx;
    }
  }
  best.lo = lo;
  best.hi = hi;
  return best;
}


// The tail is judged against the larger of the occupation sum and `floor`,
// the size of the other terms in the equation being solved.
Evaluation occupations(const ShellTable& excited, double beta, double mu_tilde, double floor) {
  Evaluation e;
  e.n0 = 1.0 / std::expm1(-beta * mu_tilde);
  const LatticeSum plus = bose_sum(excited, beta, mu_tilde, std::numeric_limits<double>::infinity());
  e.n_plus = plus.value;
  e.scale = e.n0 + e.n_plus;
  if (plus.tail_bound > kDefaultTailTolerance * std::max(e.scale, floor))
    throw TailNotConverged("occupation tail bound " + std::to_string(plus.tail_bound) +
                           " exceeds tolerance; enlarge the cutoff");
  return e;
}

}  // namespace

double chemical_potential_residual(const ModelParams& params, const ShellTable& excited, double mu_tilde) {
  const Evaluation e =
      occupations(excited, params.beta, mu_tilde, std::abs(params.mu - mu_tilde) * params.eta / params.vhat.vhat0());
  return e.n0 + e.n_plus + (mu_tilde - params.mu) * params.eta / params.vhat.vhat0();
}

ChemPotSolution solve_mu_tilde(const ModelParams& params, const LatticeSpec& spec, double tol) {
  return solve_mu_tilde(params, shells(spec), tol);
}

ChemPotSolution solve_mu_tilde(const ModelParams& params, const LatticeSpec& spec, double tol,
                               double lower_bracket) {
  return solve_mu_tilde(params, shells(spec), tol, lower_bracket);
}

ChemPotSolution solve_mu_tilde(const ModelParams& params, const ShellTable& table, double tol) {
  return solve_mu_tilde(params, table, tol, params.mu - params.eta * std::max(1.0, std::abs(params.mu)));
}

ChemPotSolution solve_mu_tilde(const ModelParams& params, const ShellTable& table, double tol,
                               double lower_bracket) {
  params.validate();
  if (!(tol > 0.0)) throw InvalidArgument("tol must be positive");
  if (!table.include_zero) throw InvalidArgument("solve_mu_tilde needs a lattice containing p = 0");
  const ShellTable excited = table.without_zero();
  const double coupling = params.eta / params.vhat.vhat0();
  const Residual f = [&](double m) {
    Evaluation e = occupations(excited, params.beta, m, std::abs(params.mu - m) * coupling);
    e.f = e.n0 + e.n_plus + (m - params.mu) * coupling;
    e.scale = std::max(e.scale, std::abs(params.mu - m) * coupling);
    return e;
  };

  double hi = -tol;
  Evaluation fhi = f(hi);
  while (!(fhi.f > 0.0)) {
    hi *= 1e-3;
    if (hi > -1e-300) throw BracketNotFound("no upper bracket with f > 0 below mu_tilde = 0");
    fhi = f(hi);
  }

  double lo = std::min(lower_bracket, 2.0 * hi);
  Evaluation flo = f(lo);
  for (int grow = 0; !(flo.f < 0.0); ++grow) {
    if (grow >= 200 || !std::isfinite(lo)) throw BracketNotFound("could not find a lower bracket with f < 0");
    lo = hi - 2.0 * (hi - lo);
    flo = f(lo);
  }

  const Root root = increasing_root(f, lo, flo, hi, fhi, tol);
  ChemPotSolution sol;
  sol.mu_tilde = root.x;
  sol.residual = std::abs(root.at.f);
  sol.gap = params.mu - root.x;
  sol.n0 = root.at.n0;
  sol.n_plus = root.at.n_plus;
  sol.bracket_lo = root.lo;
  sol.bracket_hi = root.hi;
  return sol;
}

double beta_critical(double mu, double eta, double vhat0) {
  if (!(eta > 0.0) || !(vhat0 > 0.0)) throw InvalidArgument("beta_critical needs eta, vhat0 > 0");
  if (mu <= 0.0) return std::numeric_limits<double>::infinity();
  return std::pow(mu * eta / (vhat0 * zeta_three_halves()), -2.0 / 3.0) / (4.0 * std::numbers::pi);
}

double beta_critical_ideal(double particle_number) {
  if (!(particle_number > 0.0)) throw InvalidArgument("particle number must be positive");
  return std::pow(particle_number / zeta_three_halves(), -2.0 / 3.0) / (4.0 * std::numbers::pi);
}

double condensate_fraction_limit(double kappa) {
  if (!(kappa >= 0.0)) throw InvalidArgument("kappa must be non-negative");
  if (kappa <= 1.0) return 0.0;
  return positive_part(1.0 - std::pow(kappa, -1.5));
}

Estimate expected_particles(const ModelParams& params, const ChemPotSolution& sol, double K) {
  Estimate est;
  est.value = (params.mu - sol.mu_tilde) * params.eta / params.vhat.vhat0();
  est.policy_constant = K;
  est.radius = K * std::pow(params.eta, 5.0 / 6.0) * std::sqrt(positive_part(std::log(params.eta)));
  return est;
}

IdealGasSolution solve_ideal_mu(const LatticeSpec& spec, double beta, double particle_number, double tol) {
  if (!(particle_number > 0.0)) throw InvalidArgument("particle number must be positive");
  if (!spec.include_zero) throw InvalidArgument("solve_ideal_mu needs a lattice containing p = 0");
  const ShellTable excited = shells(LatticeSpec{spec.cutoff_norm, false});
  const Residual f = [&](double m) {
    Evaluation e = occupations(excited, beta, m, particle_number);
    e.f = e.n0 + e.n_plus - particle_number;
    e.scale = particle_number;
    return e;
  };
  double hi = -tol;
  Evaluation fhi = f(hi);
  while (!(fhi.f > 0.0)) {
    hi *= 1e-3;
    if (hi > -1e-300) throw BracketNotFound("no upper bracket for the ideal-gas chemical potential");
    fhi = f(hi);
  }
  double lo = std::min(-1.0, 2.0 * hi);
  Evaluation flo = f(lo);
  for (int grow = 0; !(flo.f < 0.0); ++grow) {
    if (grow >= 200) throw BracketNotFound("no lower bracket for the ideal-gas chemical potential");
    lo *= 2.0;
    flo = f(lo);
  }
  const Root root = increasing_root(f, lo, flo, hi, fhi, tol);
  return IdealGasSolution{root.x, root.at.n0, std::abs(root.at.f)};
}

}  // namespace mfbose
