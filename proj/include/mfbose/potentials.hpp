#pragma once

#include <string>
#include <vector>

#include "mfbose/lattice.hpp"
#include "mfbose/selfconsistent.hpp"

namespace mfbose {

/// (1/beta) sum_p ln(1 - exp(-beta (p^2 - mu_tilde))) over the lattice, or over
/// its nonzero modes when excited_only is set.
LatticeSum phi_ideal(double beta, double mu_tilde, const LatticeSpec& spec, bool excited_only,
                     double rel_tol = kDefaultTailTolerance);
LatticeSum phi_ideal(double beta, double mu_tilde, const ShellTable& table, bool excited_only,
                     double rel_tol = kDefaultTailTolerance);

struct EnvelopeTerm {
  std::string label;
  double value = 0.0;
};

/// A grand-potential estimate: center +- radius. The labelled terms add up to
/// the center; the error term is carried separately by radius.
struct BoundEnvelope {
  double center = 0.0;
  double radius = 0.0;
  double policy_constant = 1.0;
  std::vector<EnvelopeTerm> terms;

  double lower() const { return center - radius; }
  double upper() const { return center + radius; }
  bool contains(double value) const { return value >= lower() && value <= upper(); }
  double term(const std::string& label) const;
};

/// Center Phi_+^id(beta, mu_tilde) - (mu - mu_tilde)^2 eta / (2 vhat0), radius K eta^{2/3}.
BoundEnvelope unperturbed_upper_bound(const ModelParams& params, const ChemPotSolution& sol,
                                      const LatticeSpec& spec, double K = 1.0);
BoundEnvelope unperturbed_upper_bound(const ModelParams& params, const ChemPotSolution& sol,
                                      const ShellTable& table, double K = 1.0);

struct LowerBoundEnvelope {
  BoundEnvelope envelope;
  /// vhat0 / (2 eta), the weight of the particle-number variance penalty.
  double penalty_coefficient = 0.0;
  /// (mu - mu_tilde + v(0)/(2 eta)) eta / vhat0, the center of that penalty.
  double number_target = 0.0;
};

/// Same center as the upper bound, radius K eta^{2/3} ln(eta).
LowerBoundEnvelope unperturbed_lower_bound(const ModelParams& params, const ChemPotSolution& sol,
                                           const LatticeSpec& spec, double K = 1.0);
LowerBoundEnvelope unperturbed_lower_bound(const ModelParams& params, const ChemPotSolution& sol,
                                           const ShellTable& table, double K = 1.0);

/// Two-sided envelope for the grand potential with the perturbation
/// delta a0* a0 + lambda sqrt(N) (a0 + a0*):
///   center = Phi_+^id - (mu - mu_tilde)^2 eta / (2 vhat0) + delta N0 - 2 |lambda| sqrt(N N0)
///   radius = K eta (delta^2 + |delta| |lambda|^{1/3} + |lambda|^{4/3} + eta^{-1/6} ln eta)
/// with N the leading particle number (mu - mu_tilde) eta / vhat0.
BoundEnvelope perturbed_bounds(const ModelParams& params, const ChemPotSolution& sol, const LatticeSpec& spec,
                               double lambda, double delta, double K = 1.0);
BoundEnvelope perturbed_bounds(const ModelParams& params, const ChemPotSolution& sol, const ShellTable& table,
                               double lambda, double delta, double K = 1.0);

/// The radius of perturbed_bounds at K = 1.
double perturbed_radius_unit(double eta, double lambda, double delta);

/// Smallest K with |exact - center| <= K * unit for every sample.
struct EnvelopeSample {
  double exact = 0.0;
  double center = 0.0;
  double unit = 1.0;
};
double calibrate_policy_constant(const std::vector<EnvelopeSample>& samples);

}  // namespace mfbose
