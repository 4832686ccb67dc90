#pragma once

#include "mfbose/cli/config.hpp"
#include "mfbose/cli/output.hpp"

namespace mfbose::cli {

/// beta, mu, eta, mu_tilde, gap, n0, n_plus, residual, kappa
Table cmd_mu_solve(const RunConfig& cfg);

/// eta, kappa, frac_finite, frac_limit, abs_err; needs a single mu.
Table cmd_phase(const RunConfig& cfg);

/// Perturbed grand-potential envelope and particle-number estimate per (beta, mu, eta, lambda, delta).
Table cmd_bounds(const RunConfig& cfg);

/// Variational surface minimum against its analytic lower bound per (beta, mu, eta, lambda, delta).
Table cmd_surface(const RunConfig& cfg);

/// Exact diagonalization per (lambda, delta) at a single (beta, mu, eta):
/// lambda, delta, grand_potential, N_exp, n0_exp, Re_a0, Im_a0, abs_a0, entropy, griffith_lo, griffith_hi
Table cmd_ed(const RunConfig& cfg);

struct VerifyResult {
  Json report;
  bool passed = false;
};

/// Seeded property suite; stops at the first failing check.
VerifyResult cmd_verify(const RunConfig& cfg);

/// Dispatches by name; returns the process exit code after writing output.
int run_command(const RunConfig& cfg);

}  // namespace mfbose::cli
