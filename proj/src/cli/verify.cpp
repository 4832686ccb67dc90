#include <cmath>
#include <functional>
#include <random>

#include "mfbose/cli/commands.hpp"
#include "mfbose/errors.hpp"
#include "mfbose/focked.hpp"
#include "mfbose/variational.hpp"

namespace mfbose::cli {

namespace {

struct CheckOutcome {
  double margin = 0.0;  // >= 0 means pass
  int trials = 0;
  double tolerance = 0.0;
};

std::mt19937_64 check_rng(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index)};
  return std::mt19937_64(seq);
}

std::vector<ModeIndex> unit_shell_subset(std::mt19937_64& rng) {
  std::vector<ModeIndex> shell{ModeIndex(1, 0, 0), ModeIndex(-1, 0, 0), ModeIndex(0, 1, 0),
                               ModeIndex(0, -1, 0), ModeIndex(0, 0, 1), ModeIndex(0, 0, -1)};
  std::shuffle(shell.begin(), shell.end(), rng);
  const int keep = std::uniform_int_distribution<int>(1, 6)(rng);
  std::vector<ModeIndex> modes{ModeIndex::Zero()};
  modes.insert(modes.end(), shell.begin(), shell.begin() + keep);
  return modes;
}

Interaction random_nonnegative(const std::vector<ModeIndex>& modes, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Interaction v(0.2 + u(rng));
  for (const auto& a : modes)
    for (const auto& b : modes) {
      const ModeIndex d = a - b;
      if (d == ModeIndex::Zero() || v(d) != 0.0) continue;
      const double c = u(rng) < 0.2 ? 0.0 : u(rng);
      v.set(d, c);
      v.set(ModeIndex(-d), c);
    }
  return v;
}

CheckOutcome check_onsager(const RunConfig& cfg, std::mt19937_64& rng) {
  CheckOutcome out{std::numeric_limits<double>::infinity(), cfg.verify_trials, 1e-10};
  for (int t = 0; t < cfg.verify_trials; ++t) {
    const auto modes = unit_shell_subset(rng);
    const int n_max = std::uniform_int_distribution<int>(2, 3)(rng);
    const int N_max = std::uniform_int_distribution<int>(n_max, 4)(rng);
    const FockBasis basis(modes, n_max, N_max, 5000);
    const double eta = std::uniform_real_distribution<double>(0.5, 5.0)(rng);
    out.margin = std::min(out.margin, onsager_gap(random_nonnegative(modes, rng), eta, basis) + out.tolerance);
  }
  return out;
}

CheckOutcome check_bosonic_relative_entropy(std::mt19937_64& rng) {
  CheckOutcome out{std::numeric_limits<double>::infinity(), 200, 1e-12};
  for (int t = 0; t < out.trials; ++t) {
    const Index d = std::uniform_int_distribution<Index>(1, 6)(rng);
    const double scale = std::uniform_real_distribution<double>(0.05, 2.0)(rng);
    const Eigen::MatrixXcd a = random_positive_matrix<Complex>(d, rng, scale);
    const Eigen::MatrixXcd b = random_positive_matrix<Complex>(d, rng, scale);
    const double s = bosonic_relative_entropy(a, b);
    out.margin = std::min(out.margin, s - bosonic_entropy_lower_bound(a, b, kEntropyConstant) + out.tolerance);
  }
  return out;
}

CheckOutcome check_lower_symbol_entropy(const RunConfig& cfg, std::mt19937_64& rng) {
  const int trials = std::min(cfg.verify_trials, 5);
  CheckOutcome out{std::numeric_limits<double>::infinity(), trials, 1e-4};
  const int n = cfg.quadrature.n_max;
  const FockBasis basis({ModeIndex::Zero(), ModeIndex(1, 0, 0)}, n, n);
  const PolarQuadrature quad(cfg.quadrature.radial_order, cfg.quadrature.angular_order, cfg.quadrature.z_max);
  for (int t = 0; t < trials; ++t) {
    const auto rho = random_density_matrix<double>(basis.dim(), rng);
    const LowerSymbol ls = lower_symbol(rho, basis, quad, 1e-4, false);
    const double rhs = ls.mean_conditional_entropy() + ls.zeta_entropy();
    out.margin = std::min(out.margin, rhs + out.tolerance - von_neumann_entropy(rho));
  }
  return out;
}

CheckOutcome check_upper_symbols(const RunConfig& cfg) {
  CheckOutcome out{std::numeric_limits<double>::infinity(), 3, 1e-6};
  const PolarQuadrature quad(cfg.quadrature.radial_order, cfg.quadrature.angular_order, cfg.quadrature.z_max);
  for (double nu : {0.0, 0.5, 1.0}) {
    const auto rep = upper_symbol_check(cfg.quadrature.n_max, quad, nu, cfg.quadrature.n_max - 2);
    out.margin = std::min(out.margin, out.tolerance - rep.max_deviation());
  }
  return out;
}

struct ToySystem {
  ModelParams params;
  FockBasis basis;
  FockOperator H;
  double n_ref = 0.0;
  double mu_tilde = 0.0;
};

ToySystem toy_system(const RunConfig& cfg) {
  const ModelParams p = cfg.params(cfg.temperature_grid().front(), cfg.mu.front(), cfg.eta.front());
  FockBasis basis(cfg.ed.modes, cfg.ed.n_max, cfg.ed.N_max, cfg.ed.dim_cap);
  FockOperator H = build_hamiltonian(p, basis);
  const ChemPotSolution s = solve_mu_tilde(p, shells_from_modes(cfg.ed.modes), cfg.tol);
  const double n_ref = cfg.ed.n_ref ? *cfg.ed.n_ref : expected_particles(p, s).value;
  return {p, std::move(basis), std::move(H), n_ref, s.mu_tilde};
}

// Orthogonal Cayley rotation by t X (X antisymmetric) followed by mixing with a random state.
DensityMatrix<double> perturb_state(const DensityMatrix<double>& rho, std::mt19937_64& rng, double t) {
  const Index d = rho.dim();
  std::normal_distribution<double> g(0.0, 1.0);
  Eigen::MatrixXd X(d, d);
  for (Index j = 0; j < d; ++j)
    for (Index i = 0; i < d; ++i) X(i, j) = g(rng);
  X = 0.5 * t * (X - X.transpose()).eval();
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(d, d);
  const Eigen::MatrixXd Q = (I - X).partialPivLu().solve(I + X);
  const Eigen::MatrixXd mix = random_density_matrix<double>(d, rng).matrix();
  Eigen::MatrixXd out = (1.0 - t) * (Q * rho.matrix() * Q.transpose()) + t * mix;
  return DensityMatrix<double>::normalized(0.5 * (out + out.transpose()));
}

CheckOutcome check_gibbs_minimality(const ToySystem& sys, std::mt19937_64& rng) {
  const double beta = sys.params.beta, mu = sys.params.mu;
  const GibbsState G = gibbs_state(sys.H, beta, mu, sys.basis);
  const double gG = grand_potential_functional(G.state, sys.H, beta, mu, sys.basis);
  CheckOutcome out{std::numeric_limits<double>::infinity(), 100, 1e-12 * std::max(1.0, std::abs(gG))};
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 100; ++k) {
    const auto rho = perturb_state(G.state, rng, 0.5 * std::pow(10.0, -3.0 * u(rng)));
    out.margin = std::min(out.margin, grand_potential_functional(rho, sys.H, beta, mu, sys.basis) - gG + out.tolerance);
  }
  const double w_max = std::sqrt(std::max(sys.n_ref, 1.0));
  for (int k = 0; k <= 4; ++k) {
    const auto trial = trial_state(sys.basis, w_max * k / 4.0, beta, sys.mu_tilde);
    out.margin =
        std::min(out.margin, grand_potential_functional(trial, sys.H, beta, mu, sys.basis) - gG + out.tolerance);
    ++out.trials;
  }
  return out;
}

std::function<double(double)> potential_in(const ToySystem& sys, bool along_lambda) {
  return [&sys, along_lambda](double x) {
    const double lambda = along_lambda ? x : 0.0;
    const double delta = along_lambda ? 0.0 : x;
    return exact_grand_potential(perturb_hamiltonian(sys.H, sys.basis, lambda, delta, sys.n_ref), sys.params.beta,
                                 sys.params.mu, sys.basis);
  };
}

CheckOutcome check_concavity(const ToySystem& sys) {
  CheckOutcome out{std::numeric_limits<double>::infinity(), 0, 0.0};
  const double h = 0.05;
  for (bool along_lambda : {true, false}) {
    const auto phi = potential_in(sys, along_lambda);
    for (int k = -10; k <= 10; ++k) {
      const double x = 0.05 * k;
      const double p0 = phi(x);
      const double tol = 1e-12 * std::max(1.0, std::abs(p0));
      const double second = phi(x + h) + phi(x - h) - 2.0 * p0;
      out.margin = std::min(out.margin, tol - second);
      out.tolerance = std::max(out.tolerance, tol);
      ++out.trials;
    }
  }
  return out;
}

CheckOutcome check_griffith(const ToySystem& sys) {
  CheckOutcome out{std::numeric_limits<double>::infinity(), 0, 1e-9};
  const double beta = sys.params.beta, mu = sys.params.mu;
  const FockOperator a0 = ladder(ModeIndex::Zero(), sys.basis, false);
  const FockOperator field = std::sqrt(sys.n_ref) * (a0 + a0.adjoint());
  const FockOperator n0 = zero_mode_number(sys.basis);
  for (bool along_lambda : {true, false}) {
    const auto phi = potential_in(sys, along_lambda);
    for (double at : {-0.2, 0.0, 0.2}) {
      const FockOperator Hp = perturb_hamiltonian(sys.H, sys.basis, along_lambda ? at : 0.0, along_lambda ? 0.0 : at,
                                                  sys.n_ref);
      const GibbsState G = gibbs_state(Hp, beta, mu, sys.basis);
      const double derivative = expectation(along_lambda ? field : n0, G.state);
      for (double step : {1e-2, 1e-3}) {
        const Bracket b = griffith_bracket(phi, at, step);
        out.margin = std::min({out.margin, derivative - b.lower + out.tolerance, b.upper - derivative + out.tolerance});
        ++out.trials;
      }
    }
  }
  return out;
}

}  // namespace

VerifyResult cmd_verify(const RunConfig& cfg) {
  cfg.validate();
  const ToySystem sys = toy_system(cfg);
  const std::vector<std::pair<std::string, std::function<CheckOutcome(std::mt19937_64&)>>> checks{
      {"onsager_inequality", [&](std::mt19937_64& rng) { return check_onsager(cfg, rng); }},
      {"bosonic_relative_entropy", [&](std::mt19937_64& rng) { return check_bosonic_relative_entropy(rng); }},
      {"lower_symbol_entropy", [&](std::mt19937_64& rng) { return check_lower_symbol_entropy(cfg, rng); }},
      {"resolution_of_identity_and_upper_symbols", [&](std::mt19937_64&) { return check_upper_symbols(cfg); }},
      {"gibbs_minimality", [&](std::mt19937_64& rng) { return check_gibbs_minimality(sys, rng); }},
      {"concavity", [&](std::mt19937_64&) { return check_concavity(sys); }},
      {"griffith_brackets", [&](std::mt19937_64&) { return check_griffith(sys); }},
  };

  VerifyResult result;
  result.passed = true;
  Json list = Json::array();
  Json first_failure = nullptr;
  for (std::size_t i = 0; i < checks.size(); ++i) {
    auto rng = check_rng(cfg.seed, i);
    const CheckOutcome c = checks[i].second(rng);
    const bool ok = c.margin >= 0.0;
    list.push_back({{"name", checks[i].first},
                    {"passed", ok},
                    {"margin", c.margin},
                    {"trials", c.trials},
                    {"tolerance", c.tolerance}});
    if (!ok) {
      result.passed = false;
      first_failure = checks[i].first;
      break;
    }
  }
  result.report["meta"] = make_meta(cfg);
  result.report["passed"] = result.passed;
  result.report["first_failure"] = first_failure;
  result.report["checks"] = list;
  return result;
}

}  // namespace mfbose::cli
