#pragma once

#include <vector>

#include "mfbose/types.hpp"

namespace mfbose {

/// Truncation of the momentum lattice 2*pi*Z^3 to a ball |p| <= cutoff_norm.
struct LatticeSpec {
  double cutoff_norm = 0.0;
  bool include_zero = true;

  /// Largest admissible |n|^2 (modes satisfy |2 pi n| <= cutoff_norm).
  int max_norm2() const;

  static LatticeSpec from_max_norm2(int max_norm2, bool include_zero = true);
};

/// Sorted by |p|^2, then lexicographically on the integer triple.
std::vector<ModeIndex> enumerate_modes(const LatticeSpec& spec);

/// The lattice as radial shells: distinct |n|^2 values with their point counts.
/// Sums over radially symmetric summands only need one evaluation per shell.
struct ShellTable {
  std::vector<int> norm2;
  std::vector<double> multiplicity;
  bool include_zero = true;
  int max_norm2 = 0;
  /// Set when the table is an explicit finite mode set rather than a ball cut
  /// out of the infinite lattice; nothing is omitted and tail bounds vanish.
  bool finite_mode_set = false;

  std::size_t mode_count() const;
  ShellTable without_zero() const;
};

ShellTable shells(const LatticeSpec& spec);

/// Shell table of an arbitrary finite mode list (e.g. a toy truncation).
ShellTable shells_from_modes(const std::vector<ModeIndex>& modes);

/// 1 / (exp(beta (p^2 - mu_tilde)) - 1) at fixed beta > 0, mu_tilde < 0.
class BoseOccupation {
public:
  BoseOccupation(double beta, double mu_tilde);

  double beta() const { return beta_; }
  double mu_tilde() const { return mu_tilde_; }

  double value_at(double p2) const;
  double value_at(const ModeIndex& n) const { return value_at(kinetic_energy(n)); }

  /// Occupation of p = 0: N_0(beta, mu_tilde) = 1 / (exp(-beta mu_tilde) - 1).
  double zero_mode() const { return value_at(0.0); }

private:
  double beta_;
  double mu_tilde_;
};

/// A truncated lattice sum together with a certified bound on what the
/// omitted modes beyond the cutoff contribute (in absolute value).
struct LatticeSum {
  double value = 0.0;
  double tail_bound = 0.0;
};

inline constexpr double kDefaultTailTolerance = 1e-10;

/// Certified bound on sum_{|n|^2 > max_norm2} exp(-beta (4 pi^2 n^2 - mu_tilde)) / (1 - exp(-x_min)),
/// which dominates both the Bose occupations and |ln(1 - exp(-x))| beyond the cutoff.
double occupation_tail_bound(int max_norm2, double beta, double mu_tilde);

/// Sum of Bose occupations over the modes of spec. Throws TailNotConverged if
/// the certified tail exceeds rel_tol times the returned value.
LatticeSum bose_sum(const LatticeSpec& spec, double beta, double mu_tilde,
                    double rel_tol = kDefaultTailTolerance);
LatticeSum bose_sum(const ShellTable& table, double beta, double mu_tilde,
                    double rel_tol = kDefaultTailTolerance);

/// (2 pi)^{-3} \int_{R^3} dp / (exp(beta p^2) - 1) = zeta(3/2) (4 pi beta)^{-3/2}.
double bose_integral(double beta);

/// Smallest cutoff whose certified tail is below rel_tol times the retained
/// sum for every mu_tilde < 0 at this beta.
LatticeSpec certified_cutoff(double beta, double rel_tol = kDefaultTailTolerance,
                             bool include_zero = true);

}  // namespace mfbose
