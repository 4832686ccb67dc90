#pragma once

#include <map>
#include <optional>

#include "mfbose/lattice.hpp"
#include "mfbose/types.hpp"

namespace mfbose {

/// Fourier coefficients vhat(p) of the pair potential, keyed by the integer
/// label of p. Missing entries are zero.
class Interaction {
public:
  Interaction() = default;
  explicit Interaction(double vhat0) { set(ModeIndex::Zero(), vhat0); }

  void set(const ModeIndex& n, double value);
  double operator()(const ModeIndex& n) const;

  /// vhat(0)
  double vhat0() const { return (*this)(ModeIndex::Zero()); }
  /// v(0) = sum_p vhat(p)
  double v0() const;
  /// d_v = (v(0) + 3 vhat(0)) / 2
  double dv() const { return 0.5 * (v0() + 3.0 * vhat0()); }

  const std::map<ModeIndex, double, ModeLess>& coefficients() const { return coefficients_; }

  /// Throws InvalidArgument unless vhat >= 0, vhat(0) > 0 and vhat(p) = vhat(-p).
  void validate() const;

private:
  std::map<ModeIndex, double, ModeLess> coefficients_;
};

struct ModelParams {
  double beta = 1.0;
  double mu = 0.0;
  double eta = 1.0;
  Interaction vhat{1.0};

  void validate() const;
};

struct ChemPotSolution {
  double mu_tilde = 0.0;
  double residual = 0.0;  // |f(mu_tilde)|
  double gap = 0.0;       // mu - mu_tilde
  double n0 = 0.0;        // N_0(beta, mu_tilde)
  double n_plus = 0.0;    // excited-mode occupation sum
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
};

inline constexpr double kDefaultSolverTolerance = 1e-10;

/// f(mu_tilde) = sum_p occupation + (mu_tilde - mu) eta / vhat(0), strictly increasing on (-inf, 0).
double chemical_potential_residual(const ModelParams& params, const ShellTable& excited, double mu_tilde);

/// Unique root of the effective chemical potential equation on (-inf, 0).
/// Convergence is declared once |f| <= tol * max(1, sum of occupations), or
/// when the bracket has collapsed to adjacent doubles.
ChemPotSolution solve_mu_tilde(const ModelParams& params, const LatticeSpec& spec,
                               double tol = kDefaultSolverTolerance);

/// Same, with a caller-chosen initial lower bracket end.
ChemPotSolution solve_mu_tilde(const ModelParams& params, const LatticeSpec& spec, double tol,
                               double lower_bracket);

/// Over an explicit shell table (which must contain p = 0), e.g. a toy mode set.
ChemPotSolution solve_mu_tilde(const ModelParams& params, const ShellTable& table,
                               double tol = kDefaultSolverTolerance);
ChemPotSolution solve_mu_tilde(const ModelParams& params, const ShellTable& table, double tol,
                               double lower_bracket);

/// 1/(4 pi) (mu eta / (vhat0 zeta(3/2)))^{-2/3} for mu > 0, +inf otherwise.
double beta_critical(double mu, double eta, double vhat0);

/// Ideal gas with N particles: 1/(4 pi) (N / zeta(3/2))^{-2/3}.
double beta_critical_ideal(double particle_number);

/// [1 - kappa^{-3/2}]_+
double condensate_fraction_limit(double kappa);

struct Estimate {
  double value = 0.0;
  double radius = 0.0;
  double policy_constant = 1.0;
};

/// Leading value (mu - mu_tilde) eta / vhat0 with radius K eta^{5/6} sqrt(ln eta).
Estimate expected_particles(const ModelParams& params, const ChemPotSolution& sol, double K = 1.0);

struct IdealGasSolution {
  double mu0 = 0.0;
  double n0 = 0.0;
  double residual = 0.0;
};

/// Ideal lattice gas: the mu0 < 0 with sum_p occupation = particle_number.
IdealGasSolution solve_ideal_mu(const LatticeSpec& spec, double beta, double particle_number,
                                double tol = kDefaultSolverTolerance);

}  // namespace mfbose
