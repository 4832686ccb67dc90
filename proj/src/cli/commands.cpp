#include "mfbose/cli/commands.hpp"

#include <cmath>

#include "mfbose/cli/pool.hpp"
#include "mfbose/errors.hpp"
#include "mfbose/focked.hpp"
#include "mfbose/potentials.hpp"
#include "mfbose/variational.hpp"

namespace mfbose::cli {

namespace {

struct ThermoPoint {
  double t = 0.0;  // beta or kappa
  double mu = 0.0;
  double eta = 0.0;
};

std::vector<ThermoPoint> thermo_points(const RunConfig& cfg) {
  std::vector<ThermoPoint> pts;
  for (double t : cfg.temperature_grid())
    for (double mu : cfg.mu)
      for (double eta : cfg.eta) pts.push_back({t, mu, eta});
  return pts;
}

struct PerturbedPoint {
  ThermoPoint thermo;
  double lambda = 0.0;
  double delta = 0.0;
};

std::vector<PerturbedPoint> perturbed_points(const RunConfig& cfg) {
  std::vector<PerturbedPoint> pts;
  for (const auto& tp : thermo_points(cfg))
    for (double l : cfg.lambda)
      for (double d : cfg.delta) pts.push_back({tp, l, d});
  return pts;
}

LatticeSpec lattice_for(const RunConfig& cfg, double beta) {
  if (cfg.cutoff_norm) return LatticeSpec{*cfg.cutoff_norm, true};
  return certified_cutoff(beta, cfg.tail_tolerance);
}

double kappa_of(const ModelParams& p) {
  const double bc = beta_critical(p.mu, p.eta, p.vhat.vhat0());
  return std::isfinite(bc) ? p.beta / bc : 0.0;
}

void require_single(const std::vector<double>& grid, const std::string& key, const std::string& command) {
  if (grid.size() != 1) throw ConfigError("'" + command + "' needs a single value of '" + key + "'");
}

FockBasis ed_basis(const RunConfig& cfg) {
  return FockBasis(cfg.ed.modes, cfg.ed.n_max, cfg.ed.N_max, cfg.ed.dim_cap);
}

}  // namespace

Table cmd_mu_solve(const RunConfig& cfg) {
  Table t{{"beta", "mu", "eta", "mu_tilde", "gap", "n0", "n_plus", "residual", "kappa"}, {}};
  const auto pts = thermo_points(cfg);
  t.rows = parallel_map<std::vector<double>>(pts.size(), cfg.jobs, [&](std::size_t i) {
    const ModelParams p = cfg.params(pts[i].t, pts[i].mu, pts[i].eta);
    const ChemPotSolution s = solve_mu_tilde(p, lattice_for(cfg, p.beta), cfg.tol);
    return std::vector<double>{p.beta, p.mu, p.eta, s.mu_tilde, s.gap, s.n0, s.n_plus, s.residual, kappa_of(p)};
  });
  return t;
}

Table cmd_phase(const RunConfig& cfg) {
  require_single(cfg.mu, "mu", "phase");
  Table t{{"eta", "kappa", "frac_finite", "frac_limit", "abs_err"}, {}};
  std::vector<ThermoPoint> pts;
  for (double tv : cfg.temperature_grid())
    for (double eta : cfg.eta) pts.push_back({tv, cfg.mu.front(), eta});
  t.rows = parallel_map<std::vector<double>>(pts.size(), cfg.jobs, [&](std::size_t i) {
    const ModelParams p = cfg.params(pts[i].t, pts[i].mu, pts[i].eta);
    const ChemPotSolution s = solve_mu_tilde(p, lattice_for(cfg, p.beta), cfg.tol);
    const double kappa = cfg.uses_kappa() ? pts[i].t : kappa_of(p);
    const double N = s.gap * p.eta / p.vhat.vhat0();
    const double finite = s.n0 / N;
    const double limit = condensate_fraction_limit(kappa);
    return std::vector<double>{p.eta, kappa, finite, limit, std::abs(finite - limit)};
  });
  return t;
}

Table cmd_bounds(const RunConfig& cfg) {
  Table t{{"beta", "mu", "eta", "lambda", "delta", "mu_tilde", "phi_ideal_excited", "center", "radius", "lower",
           "upper", "unperturbed_upper_radius", "unperturbed_lower_radius", "n_estimate", "n_radius"},
          {}};
  const auto pts = perturbed_points(cfg);
  t.rows = parallel_map<std::vector<double>>(pts.size(), cfg.jobs, [&](std::size_t i) {
    const PerturbedPoint& pt = pts[i];
    const ModelParams p = cfg.params(pt.thermo.t, pt.thermo.mu, pt.thermo.eta);
    const LatticeSpec spec = lattice_for(cfg, p.beta);
    const ChemPotSolution s = solve_mu_tilde(p, spec, cfg.tol);
    const BoundEnvelope env = perturbed_bounds(p, s, spec, pt.lambda, pt.delta, cfg.policy.K_envelope);
    const BoundEnvelope up = unperturbed_upper_bound(p, s, spec, cfg.policy.K_envelope);
    const LowerBoundEnvelope lo = unperturbed_lower_bound(p, s, spec, cfg.policy.K_envelope);
    const Estimate n = expected_particles(p, s, cfg.policy.K_particles);
    const double phi = phi_ideal(p.beta, s.mu_tilde, spec, true, cfg.tail_tolerance).value;
    return std::vector<double>{p.beta,      p.mu,      p.eta,     pt.lambda,   pt.delta,
                               s.mu_tilde,  phi,       env.center, env.radius, env.lower(),
                               env.upper(), up.radius, lo.envelope.radius, n.value, n.radius};
  });
  return t;
}

Table cmd_surface(const RunConfig& cfg) {
  Table t{{"beta", "mu", "eta", "lambda", "delta", "x_min", "y_min", "f_min", "lower_bound", "bound_case",
           "sqrt_n_plus", "sqrt_n0"},
          {}};
  const auto pts = perturbed_points(cfg);
  t.rows = parallel_map<std::vector<double>>(pts.size(), cfg.jobs, [&](std::size_t i) {
    const PerturbedPoint& pt = pts[i];
    const ModelParams p = cfg.params(pt.thermo.t, pt.thermo.mu, pt.thermo.eta);
    const ChemPotSolution s = solve_mu_tilde(p, lattice_for(cfg, p.beta), cfg.tol);
    const SurfaceParams sp = make_surface_params(p, s, pt.lambda, pt.delta);
    const SurfaceMinimum m = minimize_surface(sp, default_surface_grid(sp, cfg.surface_resolution));
    const double bound = analytic_lower_bound(sp, cfg.policy.K_surface);
    const auto c = static_cast<double>(classify_surface_case(m.point, sp));
    return std::vector<double>{p.beta,    p.mu,  p.eta, pt.lambda, pt.delta, m.point.x, m.point.y, m.value,
                               bound, c, std::sqrt(sp.n_plus), std::sqrt(sp.n0)};
  });
  return t;
}

Table cmd_ed(const RunConfig& cfg) {
  require_single(cfg.temperature_grid(), cfg.uses_kappa() ? "kappa" : "beta", "ed");
  require_single(cfg.mu, "mu", "ed");
  require_single(cfg.eta, "eta", "ed");
  const ModelParams p = cfg.params(cfg.temperature_grid().front(), cfg.mu.front(), cfg.eta.front());
  const FockBasis basis = ed_basis(cfg);
  basis.mode_position(ModeIndex::Zero());  // the perturbation acts on the zero mode
  const FockOperator H = build_hamiltonian(p, basis);
  double n_ref = 0.0;
  if (cfg.ed.n_ref) {
    n_ref = *cfg.ed.n_ref;
  } else {
    const ChemPotSolution s = solve_mu_tilde(p, shells_from_modes(cfg.ed.modes), cfg.tol);
    n_ref = expected_particles(p, s).value;
  }

  Table t{{"lambda", "delta", "grand_potential", "N_exp", "n0_exp", "Re_a0", "Im_a0", "abs_a0", "entropy",
           "griffith_lo", "griffith_hi"},
          {}};
  std::vector<std::pair<double, double>> pts;
  for (double l : cfg.lambda)
    for (double d : cfg.delta) pts.emplace_back(l, d);
  t.rows = parallel_map<std::vector<double>>(pts.size(), cfg.jobs, [&](std::size_t i) {
    const auto [lambda, delta] = pts[i];
    const FockOperator Hld = perturb_hamiltonian(H, basis, lambda, delta, n_ref);
    const GibbsState G = gibbs_state(Hld, p.beta, p.mu, basis);
    const Observables o = observables(G.state, basis, Hld, p.beta, p.mu);
    const auto phi = [&](double l) {
      return exact_grand_potential(perturb_hamiltonian(H, basis, l, delta, n_ref), p.beta, p.mu, basis);
    };
    const Bracket b = griffith_bracket(phi, lambda, cfg.ed.griffith_step);
    return std::vector<double>{lambda,       delta,          G.grand_potential,   o.N_exp,
                               o.n0_exp,     o.a0_exp.real(), o.a0_exp.imag(),    std::abs(o.a0_exp),
                               o.entropy,    b.lower,        b.upper};
  });
  return t;
}

int run_command(const RunConfig& cfg) {
  if (cfg.command == "verify") {
    const VerifyResult r = cmd_verify(cfg);
    write_output(dump_json(r.report) + "\n", cfg.out);
    return r.passed ? 0 : 1;
  }
  Table t;
  if (cfg.command == "mu-solve")
    t = cmd_mu_solve(cfg);
  else if (cfg.command == "phase")
    t = cmd_phase(cfg);
  else if (cfg.command == "bounds")
    t = cmd_bounds(cfg);
  else if (cfg.command == "surface")
    t = cmd_surface(cfg);
  else if (cfg.command == "ed")
    t = cmd_ed(cfg);
  else
    throw ConfigError("unknown command '" + cfg.command + "'");
  write_output(cfg.format == OutputFormat::Csv ? table_to_csv(t) : table_to_json(t, make_meta(cfg)), cfg.out);
  return 0;
}

}  // namespace mfbose::cli
