#include "doctest.h"

#include <cmath>

#include "mfbose/potentials.hpp"
#include "mfbose/special.hpp"
#include "oracles/lattice_oracle.hpp"

using namespace mfbose;

namespace {

ModelParams make(double kappa, double mu, double eta) {
  ModelParams p;
  p.mu = mu;
  p.eta = eta;
  p.vhat = Interaction(1.0);
  p.beta = kappa / (4.0 * M_PI) * std::pow(eta / zeta_three_halves(), -2.0 / 3.0);
  return p;
}

}  // namespace

TEST_CASE("phi_ideal: closed form, sign and brute force") {
  CHECK(phi_ideal(1.0, -std::log(2.0), LatticeSpec{0.0, true}, false).value ==
        doctest::Approx(-std::log(2.0)).epsilon(1e-15));

  const auto spec = certified_cutoff(0.05, 1e-12);
  for (double mt : {-0.01, -1.0, -5.0})
    CHECK(phi_ideal(0.05, mt, spec, true).value > phi_ideal(0.05, mt, spec, false).value);

  const double brute = oracle::cube_sum(8, true, [](double p2) { return std::log1p(-std::exp(-(p2 + 1.0))); });
  CHECK(std::abs(phi_ideal(1.0, -1.0, certified_cutoff(1.0), false).value - brute) <= 1e-12);
}

TEST_CASE("unperturbed envelopes share a center and have the stated radii") {
  const ModelParams p = make(2.0, 1.0, 1e4);
  const auto spec = certified_cutoff(p.beta, 1e-12);
  const auto sol = solve_mu_tilde(p, spec);
  const auto up = unperturbed_upper_bound(p, sol, spec, 2.0);
  const auto lo = unperturbed_lower_bound(p, sol, spec, 2.0);
  CHECK(up.center == lo.envelope.center);
  CHECK(up.radius == doctest::Approx(2.0 * std::pow(1e4, 2.0 / 3.0)));
  CHECK(lo.envelope.radius == doctest::Approx(2.0 * std::pow(1e4, 2.0 / 3.0) * std::log(1e4)));
  CHECK(lo.envelope.lower() <= up.upper());
  CHECK(up.term("ideal") + up.term("quadratic") == doctest::Approx(up.center).epsilon(1e-15));
  CHECK(up.term("quadratic") == doctest::Approx(-sol.gap * sol.gap * 1e4 / 2.0));
  // The number target differs from the leading particle number by v(0) / (2 vhat0).
  CHECK(lo.number_target - expected_particles(p, sol).value == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(lo.penalty_coefficient == doctest::Approx(1.0 / (2.0 * 1e4)));
}

TEST_CASE("upper envelope center ignores vhat(p) at p != 0 for a fixed solution") {
  ModelParams p = make(2.0, 1.0, 1e3);
  const auto spec = certified_cutoff(p.beta, 1e-12);
  const auto sol = solve_mu_tilde(p, spec);
  const double c0 = unperturbed_upper_bound(p, sol, spec).center;
  p.vhat.set(ModeIndex(1, 0, 0), 0.4);
  p.vhat.set(ModeIndex(-1, 0, 0), 0.4);
  CHECK(unperturbed_upper_bound(p, sol, spec).center == c0);
}

TEST_CASE("quadratic term is linear in eta at fixed gap") {
  ModelParams p = make(2.0, 1.0, 1e3);
  const auto spec = certified_cutoff(p.beta, 1e-12);
  const auto sol = solve_mu_tilde(p, spec);
  const double q1 = unperturbed_upper_bound(p, sol, spec).term("quadratic");
  p.eta *= 3.0;
  CHECK(unperturbed_upper_bound(p, sol, spec).term("quadratic") == doctest::Approx(3.0 * q1));
}

TEST_CASE("perturbed_bounds: terms, slopes and concavity") {
  const ModelParams p = make(2.0, 1.0, 1e4);
  const auto spec = certified_cutoff(p.beta, 1e-12);
  const auto sol = solve_mu_tilde(p, spec);
  const double N = expected_particles(p, sol).value;

  const auto zero = perturbed_bounds(p, sol, spec, 0.0, 0.0);
  CHECK(zero.center == doctest::Approx(unperturbed_upper_bound(p, sol, spec).center).epsilon(1e-15));
  CHECK(zero.radius == doctest::Approx(1e4 * std::pow(1e4, -1.0 / 6.0) * std::log(1e4)));

  const double h = 1e-3;
  for (double delta : {-0.2, 0.0, 0.15}) {
    const double slope = (perturbed_bounds(p, sol, spec, 0.1, delta + h).center -
                          perturbed_bounds(p, sol, spec, 0.1, delta - h).center) / (2 * h);
    CHECK(slope == doctest::Approx(sol.n0).epsilon(1e-7));
  }
  for (double lambda : {-0.2, 0.05, 0.3}) {
    const double slope = (perturbed_bounds(p, sol, spec, lambda + h, 0.1).center -
                          perturbed_bounds(p, sol, spec, lambda - h, 0.1).center) / (2 * h);
    CHECK(std::abs(slope) == doctest::Approx(2.0 * std::sqrt(N * sol.n0)).epsilon(1e-7));
    CHECK(slope * lambda < 0.0);
  }
  // second differences <= 0 in delta and in lambda
  for (double t : {-0.3, -0.01, 0.0, 0.02, 0.3}) {
    const double h2 = 0.05;
    const auto c = [&](double l, double d) { return perturbed_bounds(p, sol, spec, l, d).center; };
    CHECK(c(0.1, t + h2) - 2 * c(0.1, t) + c(0.1, t - h2) <= 1e-9 * std::abs(c(0.1, t)));
    CHECK(c(t + h2, 0.1) - 2 * c(t, 0.1) + c(t - h2, 0.1) <= 1e-9 * std::abs(c(t, 0.1)));
  }
  const auto env = perturbed_bounds(p, sol, spec, -0.2, 0.1, 1.5);
  double sum = 0.0;
  for (const auto& t : env.terms)
    if (t.label != "error") sum += t.value;
  CHECK(sum == doctest::Approx(env.center).epsilon(1e-14));
  CHECK(env.radius == doctest::Approx(1.5 * perturbed_radius_unit(1e4, -0.2, 0.1)));
}

TEST_CASE("calibrate_policy_constant") {
  CHECK(calibrate_policy_constant({{1.0, 0.5, 1.0}, {2.0, 3.0, 0.5}}) == doctest::Approx(2.0));
  CHECK(calibrate_policy_constant({}) == 0.0);
}
