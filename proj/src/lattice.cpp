#include "mfbose/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>

#include "mfbose/errors.hpp"
#include "mfbose/special.hpp"

namespace mfbose {

namespace {

constexpr double kFourPiSquared = kTwoPi * kTwoPi;

// Upper bound on the Jacobi theta sum  sum_{k in Z} exp(-b k^2).
double theta_bound(double b) {
  const double integral = std::sqrt(std::numbers::pi / b);
  const double geometric = 2.0 / std::expm1(b);
  return 1.0 + std::min(integral, geometric);
}

// log of a bound on sum_{|n|^2 >= m} exp(-a n^2), optimised over the split
// exp(-a n^2) <= exp(-a (1 - t) m) exp(-a t n^2).
double log_gaussian_tail(double a, int m) {
  double best = std::numeric_limits<double>::infinity();
  for (int i = 1; i < 50; ++i) {
    const double t = i / 50.0;
    const double log_bound = -a * (1.0 - t) * m + 3.0 * std::log(theta_bound(a * t));
    best = std::min(best, log_bound);
  }
  return best;
}

void check_beta_mu(double beta, double mu_tilde) {
  if (!(beta > 0.0) || !std::isfinite(beta)) throw InvalidArgument("beta must be positive and finite");
  if (!(mu_tilde < 0.0)) throw InvalidArgument("mu_tilde must be negative");
}

}  // namespace

int LatticeSpec::max_norm2() const {
  if (!(cutoff_norm >= 0.0) || !std::isfinite(cutoff_norm))
    throw InvalidArgument("cutoff_norm must be finite and non-negative");
  const double r = cutoff_norm / kTwoPi;
  return static_cast<int>(std::floor(r * r * (1.0 + 1e-12) + 1e-12));
}

LatticeSpec LatticeSpec::from_max_norm2(int max_norm2, bool include_zero) {
  if (max_norm2 < 0) throw InvalidArgument("max_norm2 must be non-negative");
  return LatticeSpec{kTwoPi * std::sqrt(static_cast<double>(max_norm2)), include_zero};
}

std::vector<ModeIndex> enumerate_modes(const LatticeSpec& spec) {
  const int k_max = spec.max_norm2();
  const int r = static_cast<int>(std::floor(std::sqrt(static_cast<double>(k_max))));
  std::vector<ModeIndex> modes;
  for (int x = -r; x <= r; ++x)
    for (int y = -r; y <= r; ++y)
      for (int z = -r; z <= r; ++z) {
        const int n2 = x * x + y * y + z * z;
        if (n2 > k_max) continue;
        if (n2 == 0 && !spec.include_zero) continue;
        modes.emplace_back(x, y, z);
      }
  std::sort(modes.begin(), modes.end(), mode_less);
  return modes;
}

std::size_t ShellTable::mode_count() const {
  double total = 0.0;
  for (double m : multiplicity) total += m;
  return static_cast<std::size_t>(total + 0.5);
}

ShellTable shells(const LatticeSpec& spec) {
  const int k_max = spec.max_norm2();
  const int r = static_cast<int>(std::floor(std::sqrt(static_cast<double>(k_max))));
  // Count the octant n_i >= 0 and weight by the number of sign flips.
  std::vector<long> counts(static_cast<std::size_t>(k_max) + 1, 0);
  for (int x = 0; x <= r; ++x) {
    const int x2 = x * x;
    for (int y = 0; y <= r && x2 + y * y <= k_max; ++y) {
      const int xy2 = x2 + y * y;
      for (int z = 0; xy2 + z * z <= k_max; ++z) {
        const int signs = (x ? 2 : 1) * (y ? 2 : 1) * (z ? 2 : 1);
        counts[static_cast<std::size_t>(xy2 + z * z)] += signs;
      }
    }
  }
  ShellTable table;
  table.include_zero = spec.include_zero;
  table.max_norm2 = k_max;
  for (int k = spec.include_zero ? 0 : 1; k <= k_max; ++k) {
    if (counts[static_cast<std::size_t>(k)] == 0) continue;
    table.norm2.push_back(k);
    table.multiplicity.push_back(static_cast<double>(counts[static_cast<std::size_t>(k)]));
  }
  return table;
}

ShellTable ShellTable::without_zero() const {
  ShellTable out = *this;
  out.include_zero = false;
  if (!out.norm2.empty() && out.norm2.front() == 0) {
    out.norm2.erase(out.norm2.begin());
    out.multiplicity.erase(out.multiplicity.begin());
  }
  return out;
}

ShellTable shells_from_modes(const std::vector<ModeIndex>& modes) {
  std::map<int, double> counts;
  for (const auto& n : modes) counts[norm2(n)] += 1.0;
  ShellTable table;
  table.finite_mode_set = true;
  table.include_zero = counts.count(0) > 0;
  for (const auto& [k, c] : counts) {
    table.norm2.push_back(k);
    table.multiplicity.push_back(c);
    table.max_norm2 = k;
  }
  return table;
}

BoseOccupation::BoseOccupation(double beta, double mu_tilde) : beta_(beta), mu_tilde_(mu_tilde) {
  check_beta_mu(beta, mu_tilde);
}

double BoseOccupation::value_at(double p2) const { return 1.0 / std::expm1(beta_ * (p2 - mu_tilde_)); }

double occupation_tail_bound(int max_norm2, double beta, double mu_tilde) {
  check_beta_mu(beta, mu_tilde);
  const double a = kFourPiSquared * beta;
  const int m = max_norm2 + 1;
  const double x_min = a * m - beta * mu_tilde;
  const double log_bound = beta * mu_tilde + log_gaussian_tail(a, m) - std::log(-std::expm1(-x_min));
  return std::exp(log_bound);
}

LatticeSum bose_sum(const ShellTable& table, double beta, double mu_tilde, double rel_tol) {
  check_beta_mu(beta, mu_tilde);
  // Smallest terms first, with Neumaier compensation.
  double sum = 0.0;
  double comp = 0.0;
  for (std::size_t i = table.norm2.size(); i-- > 0;) {
    const double x = beta * (kFourPiSquared * table.norm2[i] - mu_tilde);
    const double term = table.multiplicity[i] / std::expm1(x);
    const double t = sum + term;
    comp += std::abs(sum) >= std::abs(term) ? (sum - t) + term : (term - t) + sum;
    sum = t;
  }
  LatticeSum result{sum + comp,
                    table.finite_mode_set ? 0.0 : occupation_tail_bound(table.max_norm2, beta, mu_tilde)};
  if (result.tail_bound > rel_tol * std::abs(result.value))
    throw TailNotConverged("Bose sum tail bound " + std::to_string(result.tail_bound) +
                           " exceeds tolerance at |n|^2 <= " + std::to_string(table.max_norm2));
  return result;
}

LatticeSum bose_sum(const LatticeSpec& spec, double beta, double mu_tilde, double rel_tol) {
  return bose_sum(shells(spec), beta, mu_tilde, rel_tol);
}

double bose_integral(double beta) {
  if (!(beta > 0.0)) throw InvalidArgument("beta must be positive");
  return zeta_three_halves() * std::pow(4.0 * std::numbers::pi * beta, -1.5);
}

LatticeSpec certified_cutoff(double beta, double rel_tol, bool include_zero) {
  if (!(beta > 0.0)) throw InvalidArgument("beta must be positive");
  if (!(rel_tol > 0.0)) throw InvalidArgument("rel_tol must be positive");
  const double a = kFourPiSquared * beta;
  // Retained sum >= exp(beta mu_tilde) * (zero term + unit shell) since
  // 1/(e^x - 1) >= e^{-x}; the tail carries the same exp(beta mu_tilde).
  const double retained = (include_zero ? 1.0 : 0.0) + 6.0 * std::exp(-a);
  const double log_target = std::log(rel_tol * retained);
  auto ok = [&](long k) {
    const int m = static_cast<int>(k + 1);
    return log_gaussian_tail(a, m) - std::log(-std::expm1(-a * m)) <= log_target;
  };
  long hi = 1;
  while (!ok(hi)) {
    hi *= 2;
    if (hi > (1L << 28)) throw TailNotConverged("certified_cutoff: beta too small for a finite cutoff");
  }
  long lo = hi / 2;
  if (lo < 1) lo = 0;
  while (hi - lo > 1) {
    const long mid = (lo + hi) / 2;
    (ok(mid) ? hi : lo) = mid;
  }
  return LatticeSpec::from_max_norm2(static_cast<int>(hi), include_zero);
}

}  // namespace mfbose
