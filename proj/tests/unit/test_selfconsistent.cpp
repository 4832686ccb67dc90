#include "doctest.h"

#include <cmath>
#include <random>

#include "mfbose/errors.hpp"
#include "mfbose/lattice.hpp"
#include "mfbose/selfconsistent.hpp"
#include "mfbose/special.hpp"
#include "oracles/lattice_oracle.hpp"

using namespace mfbose;

namespace {

ModelParams make(double beta, double mu, double eta, double vhat0 = 1.0) {
  ModelParams p;
  p.beta = beta;
  p.mu = mu;
  p.eta = eta;
  p.vhat = Interaction(vhat0);
  return p;
}

double scaled_beta(double kappa, double eta) {
  // kappa * beta_c at mu = vhat0 = 1, defined for every sign of mu.
  return kappa / (4.0 * M_PI) * std::pow(eta / zeta_three_halves(), -2.0 / 3.0);
}

}  // namespace

TEST_CASE("solve_mu_tilde: zero-mode-only lattice matches the scalar root") {
  const ModelParams p = make(1.0, 0.0, 1.0);
  const auto sol = solve_mu_tilde(p, LatticeSpec{0.0, true}, 1e-13);
  const double bisected = oracle::bisect_increasing([](double m) { return 1.0 / std::expm1(-m) + m; }, -5.0, -1e-9);
  CHECK(std::abs(sol.mu_tilde - oracle::kZeroModeOnlyMuTilde) <= 1e-12);
  CHECK(std::abs(bisected - oracle::kZeroModeOnlyMuTilde) <= 1e-14);
  CHECK(sol.mu_tilde < 0.0);
  CHECK(sol.bracket_lo <= sol.mu_tilde);
  CHECK(sol.mu_tilde <= sol.bracket_hi);
}

TEST_CASE("solve_mu_tilde: increasing mu increases mu_tilde") {
  const double eta = 1e3;
  const double beta = scaled_beta(1.5, eta);
  const auto spec = certified_cutoff(beta, 1e-12);
  double prev = -std::numeric_limits<double>::infinity();
  for (double mu : {-2.0, -0.5, 0.0, 0.5, 1.0, 2.0}) {
    const auto sol = solve_mu_tilde(make(beta, mu, eta), spec);
    CHECK(sol.mu_tilde > prev);
    prev = sol.mu_tilde;
  }
}

TEST_CASE("solve_mu_tilde: the gap stays bounded at beta = beta_c") {
  // Empirical window; the scan gives gaps near 0.7-1.0.
  const double c = 0.25;
  for (double eta : {1e3, 1e4, 1e5}) {
    const ModelParams p = make(beta_critical(1.0, eta, 1.0), 1.0, eta);
    const auto sol = solve_mu_tilde(p, certified_cutoff(p.beta, 1e-12));
    CHECK(sol.gap >= c);
    CHECK(sol.gap <= 1.0 / c);
  }
}

TEST_CASE("solve_mu_tilde: solution satisfies the defining equation") {
  const ModelParams p = make(scaled_beta(2.0, 1e4), 1.0, 1e4);
  const auto sol = solve_mu_tilde(p, certified_cutoff(p.beta, 1e-12));
  const double lead = expected_particles(p, sol).value;
  CHECK(std::abs(sol.n0 + sol.n_plus - lead) <= 1e-9 * lead);
  CHECK(sol.residual <= 1e-10 * lead);
  CHECK(sol.gap == doctest::Approx(p.mu - sol.mu_tilde));
  CHECK(sol.n0 == doctest::Approx(1.0 / std::expm1(-p.beta * sol.mu_tilde)).epsilon(1e-14));
}

TEST_CASE("solve_mu_tilde: two brackets agree and f is increasing across the bracket") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 100; ++t) {
    const double eta = std::pow(10.0, 2.0 + 3.0 * u(rng));
    const double mu = -0.5 + 2.5 * u(rng);
    const double kappa = 0.3 + 2.7 * u(rng);
    const double vhat0 = 0.5 + u(rng);
    const ModelParams p = make(scaled_beta(kappa, eta), mu, eta, vhat0);
    const auto spec = certified_cutoff(p.beta, 1e-12);
    const double tol = 1e-10;
    const auto a = solve_mu_tilde(p, spec, tol);
    const auto b = solve_mu_tilde(p, spec, tol, -1e4 * eta);
    CHECK(std::abs(a.mu_tilde - b.mu_tilde) <= 10.0 * tol * std::max(1.0, std::abs(a.mu_tilde)));

    const ShellTable excited = shells(LatticeSpec{spec.cutoff_norm, false});
    double prev = -std::numeric_limits<double>::infinity();
    for (int k = 0; k <= 8; ++k) {
      const double m = a.bracket_lo - 1.0 + (a.bracket_hi - a.bracket_lo + 1.0) * k / 8.0;
      const double f = chemical_potential_residual(p, excited, std::min(m, -1e-12));
      CHECK(f > prev);
      prev = f;
    }
  }
}

TEST_CASE("solve_mu_tilde: a priori bounds over an eta scan") {
  for (double eta : {1e2, 1e3, 1e4, 1e5}) {
    const double beta = scaled_beta(1.0, eta);
    const auto spec = certified_cutoff(beta, 1e-12);
    // mu >= 0: -mu_tilde stays of order one.
    for (double mu : {0.0, 1.0, 3.0}) {
      const auto sol = solve_mu_tilde(make(beta, mu, eta), spec);
      CHECK(-sol.mu_tilde <= 5.0);
    }
    // -eta^{2/3} <~ mu < 0: -mu_tilde <~ eta^{2/3}.
    const double e23 = std::pow(eta, 2.0 / 3.0);
    for (double mu : {-0.5 * e23, -1.0}) {
      const auto sol = solve_mu_tilde(make(beta, mu, eta), spec);
      CHECK(-sol.mu_tilde <= 2.0 * e23);
      // occupation sum is comparable to eta
      const double total = sol.n0 + sol.n_plus;
      CHECK(total >= 1e-2 * eta);
      CHECK(total <= 1e2 * eta);
    }
  }
}

TEST_CASE("solve_mu_tilde: bracket and lattice errors") {
  CHECK_THROWS_AS(solve_mu_tilde(make(1.0, 0.0, 1.0), LatticeSpec{0.0, false}), InvalidArgument);
  // A lower bracket end that is already to the right of the root is grown until f < 0.
  const auto sol = solve_mu_tilde(make(1.0, 0.0, 1.0), LatticeSpec{0.0, true}, 1e-12, -0.1);
  CHECK(std::abs(sol.mu_tilde - oracle::kZeroModeOnlyMuTilde) <= 1e-10);
  ModelParams bad = make(1.0, 0.0, 1.0);
  bad.vhat.set(ModeIndex(1, 0, 0), -0.1);
  bad.vhat.set(ModeIndex(-1, 0, 0), -0.1);
  CHECK_THROWS_AS(solve_mu_tilde(bad, LatticeSpec{0.0, true}), InvalidArgument);
  CHECK_THROWS_AS(solve_mu_tilde(make(0.02, 1.0, 1e3), LatticeSpec::from_max_norm2(1)), TailNotConverged);
}

TEST_CASE("beta_critical") {
  CHECK(std::isinf(beta_critical(0.0, 10.0, 1.0)));
  CHECK(std::isinf(beta_critical(-1.0, 10.0, 1.0)));
  CHECK(beta_critical(zeta_three_halves(), 1.0, 1.0) == doctest::Approx(1.0 / (4.0 * M_PI)).epsilon(1e-14));
  CHECK(beta_critical(1.3, 8.0 * 77.0, 0.4) == doctest::Approx(beta_critical(1.3, 77.0, 0.4) / 4.0).epsilon(1e-14));
  CHECK(beta_critical_ideal(zeta_three_halves()) == doctest::Approx(1.0 / (4.0 * M_PI)).epsilon(1e-14));
}

TEST_CASE("condensate_fraction_limit") {
  CHECK(condensate_fraction_limit(1.0) == 0.0);
  CHECK(condensate_fraction_limit(0.5) == 0.0);
  CHECK(condensate_fraction_limit(std::pow(2.0, 2.0 / 3.0)) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(condensate_fraction_limit(4.0) == doctest::Approx(7.0 / 8.0).epsilon(1e-15));
  CHECK_THROWS_AS(condensate_fraction_limit(-1.0), InvalidArgument);
}

TEST_CASE("expected_particles") {
  ModelParams p = make(1.0, 1.0, 1e6);
  ChemPotSolution sol;
  sol.mu_tilde = 0.0;
  sol.gap = 1.0;
  const auto est = expected_particles(p, sol);
  CHECK(est.value == doctest::Approx(1e6));
  CHECK(est.radius == doctest::Approx(std::pow(1e6, 5.0 / 6.0) * std::sqrt(std::log(1e6))));
  CHECK(expected_particles(p, sol, 3.0).radius == doctest::Approx(3.0 * est.radius));
}

TEST_CASE("solve_ideal_mu reproduces the particle number") {
  const double N = 1e4;
  const double beta = 2.0 * beta_critical_ideal(N);
  const auto spec = certified_cutoff(beta, 1e-12);
  const auto s = solve_ideal_mu(spec, beta, N);
  CHECK(s.mu0 < 0.0);
  CHECK(s.n0 + bose_sum(LatticeSpec{spec.cutoff_norm, false}, beta, s.mu0).value == doctest::Approx(N).epsilon(1e-10));
}
