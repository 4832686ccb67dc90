#include "mfbose/potentials.hpp"

#include <cmath>
#include <limits>

#include "mfbose/errors.hpp"
#include "mfbose/special.hpp"

namespace mfbose {

LatticeSum phi_ideal(double beta, double mu_tilde, const LatticeSpec& spec, bool excited_only, double rel_tol) {
  return phi_ideal(beta, mu_tilde, shells(spec), excited_only, rel_tol);
}

LatticeSum phi_ideal(double beta, double mu_tilde, const ShellTable& full, bool excited_only, double rel_tol) {
  if (!(beta > 0.0)) throw InvalidArgument("beta must be positive");
  if (!(mu_tilde < 0.0)) throw InvalidArgument("mu_tilde must be negative");
  const ShellTable table = excited_only ? full.without_zero() : full;
  const double four_pi2 = kTwoPi * kTwoPi;
  double sum = 0.0;
  double comp = 0.0;
  for (std::size_t i = table.norm2.size(); i-- > 0;) {
    const double x = beta * (four_pi2 * table.norm2[i] - mu_tilde);
    const double term = table.multiplicity[i] * std::log1p(-std::exp(-x));
    const double t = sum + term;
    comp += std::abs(sum) >= std::abs(term) ? (sum - t) + term : (term - t) + sum;
    sum = t;
  }
  // |ln(1 - e^{-x})| <= e^{-x} / (1 - e^{-x}), so the occupation tail bound applies.
  const double tail = table.finite_mode_set ? 0.0 : occupation_tail_bound(table.max_norm2, beta, mu_tilde) / beta;
  LatticeSum result{(sum + comp) / beta, tail};
  if (result.tail_bound > rel_tol * std::abs(result.value))
    throw TailNotConverged("ideal grand potential tail bound exceeds tolerance");
  return result;
}

double BoundEnvelope::term(const std::string& label) const {
  for (const auto& t : terms)
    if (t.label == label) return t.value;
  throw InvalidArgument("no envelope term labelled " + label);
}

namespace {

BoundEnvelope unperturbed_center(const ModelParams& params, const ChemPotSolution& sol, const ShellTable& table) {
  BoundEnvelope env;
  const double ideal = phi_ideal(params.beta, sol.mu_tilde, table, true).value;
  const double quadratic = -sol.gap * sol.gap * params.eta / (2.0 * params.vhat.vhat0());
  env.terms = {{"ideal", ideal}, {"quadratic", quadratic}};
  env.center = ideal + quadratic;
  return env;
}

}  // namespace

BoundEnvelope unperturbed_upper_bound(const ModelParams& params, const ChemPotSolution& sol,
                                      const ShellTable& table, double K) {
  BoundEnvelope env = unperturbed_center(params, sol, table);
  env.policy_constant = K;
  env.radius = K * std::pow(params.eta, 2.0 / 3.0);
  env.terms.push_back({"error", env.radius});
  return env;
}

LowerBoundEnvelope unperturbed_lower_bound(const ModelParams& params, const ChemPotSolution& sol,
                                           const ShellTable& table, double K) {
  LowerBoundEnvelope out;
  out.envelope = unperturbed_center(params, sol, table);
  out.envelope.policy_constant = K;
  out.envelope.radius = K * std::pow(params.eta, 2.0 / 3.0) * positive_part(std::log(params.eta));
  out.envelope.terms.push_back({"error", out.envelope.radius});
  const double vhat0 = params.vhat.vhat0();
  out.penalty_coefficient = vhat0 / (2.0 * params.eta);
  out.number_target = (sol.gap + params.vhat.v0() / (2.0 * params.eta)) * params.eta / vhat0;
  return out;
}

double perturbed_radius_unit(double eta, double lambda, double delta) {
  const double l = std::abs(lambda);
  const double d = std::abs(delta);
  return eta * (d * d + d * std::cbrt(l) + std::pow(l, 4.0 / 3.0) +
                std::pow(eta, -1.0 / 6.0) * positive_part(std::log(eta)));
}

BoundEnvelope perturbed_bounds(const ModelParams& params, const ChemPotSolution& sol, const ShellTable& table,
                               double lambda, double delta, double K) {
  BoundEnvelope env = unperturbed_center(params, sol, table);
  const double particles = expected_particles(params, sol).value;
  const double delta_term = delta * sol.n0;
  const double lambda_term = -2.0 * std::abs(lambda) * std::sqrt(particles * sol.n0);
  env.terms.push_back({"delta", delta_term});
  env.terms.push_back({"lambda", lambda_term});
  env.center += delta_term + lambda_term;
  env.policy_constant = K;
  env.radius = K * perturbed_radius_unit(params.eta, lambda, delta);
  env.terms.push_back({"error", env.radius});
  return env;
}

double calibrate_policy_constant(const std::vector<EnvelopeSample>& samples) {
  double K = 0.0;
  for (const auto& s : samples) {
    if (!(s.unit > 0.0)) throw InvalidArgument("envelope unit must be positive");
    K = std::max(K, std::abs(s.exact - s.center) / s.unit);
  }
  return K;
}


BoundEnvelope unperturbed_upper_bound(const ModelParams& params, const ChemPotSolution& sol,
                                      const LatticeSpec& spec, double K) {
  return unperturbed_upper_bound(params, sol, shells(spec), K);
}

LowerBoundEnvelope unperturbed_lower_bound(const ModelParams& params, const ChemPotSolution& sol,
                                           const LatticeSpec& spec, double K) {
  return unperturbed_lower_bound(params, sol, shells(spec), K);
}

BoundEnvelope perturbed_bounds(const ModelParams& params, const ChemPotSolution& sol, const LatticeSpec& spec,
                               double lambda, double delta, double K) {
  return perturbed_bounds(params, sol, shells(spec), lambda, delta, K);
}

}  // namespace mfbose
