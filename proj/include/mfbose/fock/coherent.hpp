#pragma once

#include <Eigen/Dense>
#include <vector>

#include "mfbose/fock/states.hpp"
#include "mfbose/special.hpp"

namespace mfbose {

/// <n|z> = e^{-|z|^2/2} z^n / sqrt(n!) for n = 0..n_max (no renormalization).
Eigen::VectorXcd coherent_overlaps(Complex z, int n_max);

struct CoherentState {
  Eigen::VectorXcd vector;  // renormalized on n <= n_max
  /// max of the lost norm 1 - sum_{n<=n_max} |<n|z>|^2 and the relative
  /// error of the mean occupation after renormalization.
  double truncation_error = 0.0;
};

/// |z> on the single-mode space n <= n_max. Throws TruncationUnfaithful when
/// the truncation error exceeds max_error.
CoherentState coherent_state(Complex z, int n_max, double max_error = 0.01);

/// Polar rule for the measure dz = pi^{-1} dx dy on the disc |z| <= z_max:
/// Gauss-Legendre in the radius, uniform angles theta_b = 2 pi b / angular_order.
class PolarQuadrature {
public:
  PolarQuadrature(int radial_order, int angular_order, double z_max);

  int radial_order() const { return static_cast<int>(radii_.size()); }
  int angular_order() const { return angular_order_; }
  double z_max() const { return z_max_; }
  Index size() const { return static_cast<Index>(radii_.size()) * angular_order_; }

  const std::vector<double>& radii() const { return radii_; }
  /// Radial weight r w_r / pi; the full node weight is this times 2 pi / angular_order.
  const std::vector<double>& radial_weights() const { return radial_weights_; }
  double angle(int b) const;
  /// Flattened node k = a * angular_order + b.
  Complex node(Index k) const;
  double weight(Index k) const;

private:
  std::vector<double> radii_;
  std::vector<double> radial_weights_;
  int angular_order_;
  double z_max_;
};

/// Husimi-type decomposition of a state against zero-mode coherent states:
/// zeta(z) = tr <z|rho|z>, Gamma_z = <z|rho|z> / zeta(z), on the quadrature nodes.
/// The conditional states act on the span of the excited configurations that
/// occur in the basis (listed in rest_states, zero-mode entry removed).
struct LowerSymbol {
  std::vector<Complex> nodes;
  std::vector<double> weights;
  std::vector<double> zeta;
  std::vector<Eigen::MatrixXcd> conditional;
  std::vector<double> conditional_entropy;
  std::vector<std::vector<int>> rest_states;
  /// sum_k w_k zeta_k, the quadrature estimate of the total mass 1.
  double mass = 0.0;

  /// -sum_k w_k zeta_k ln zeta_k
  double zeta_entropy() const;
  /// sum_k w_k zeta_k S(Gamma_z)
  double mean_conditional_entropy() const;
};

/// Throws QuadratureNotConverged when |mass - 1| > mass_tolerance.
LowerSymbol lower_symbol(const DensityMatrix<double>& rho, const FockBasis& basis, const PolarQuadrature& quad,
                         double mass_tolerance = 1e-4, bool keep_conditionals = true);

struct UpperSymbolReport {
  int n_max = 0;
  int n_safe = 0;
  double nu = 0.0;
  /// max |(int |z><z| dz - 1)_{nm}| over n, m <= n_safe
  double identity_deviation = 0.0;
  /// same for (|z|^2 - 1) against a_0^* a_0
  double number_deviation = 0.0;
  /// same for (|z|^2 + nu)^2 - 3(|z|^2 + nu) + nu + 1 against (a_0^* a_0 + nu)^2
  double number_squared_deviation = 0.0;

  double max_deviation() const;
};

/// Quadrature check of the resolution of identity and of the upper symbols of
/// N and N^2 on the single-mode space, restricted to occupations <= n_safe.
UpperSymbolReport upper_symbol_check(int n_max, const PolarQuadrature& quad, double nu, int n_safe);

/// Throws QuadratureNotConverged when the report's max deviation exceeds tol.
void require_converged(const UpperSymbolReport& report, double tol);

}  // namespace mfbose
