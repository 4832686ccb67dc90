#include "mfbose/fock/states.hpp"

#include <map>

#include "mfbose/fock/coherent.hpp"

namespace mfbose {

namespace {

FockOperator shifted_hamiltonian(const FockOperator& H, double mu, const FockBasis& basis) {
  H.require_same_basis(basis.fingerprint());
  return H - mu * number_operator(basis);
}

double shifted_log_partition(const Spectrum& spec, double beta, double e_min) {
  double z = 0.0;
  for (const auto& s : spec.sectors)
    for (Index k = 0; k < s.energies.size(); ++k) z += std::exp(-beta * (s.energies(k) - e_min));
  return std::log(z);
}

}  // namespace

GibbsState gibbs_state(const FockOperator& H, double beta, double mu, const FockBasis& basis) {
  if (!(beta > 0.0)) throw InvalidArgument("beta must be positive");
  const Spectrum spec = diagonalize(shifted_hamiltonian(H, mu, basis), true);
  const double e_min = spec.min_energy();
  const double log_z = shifted_log_partition(spec, beta, e_min);
  if (!std::isfinite(log_z)) throw NumericalOverflow("partition function is not finite");
  Eigen::MatrixXd rho = Eigen::MatrixXd::Zero(basis.dim(), basis.dim());
  for (const auto& s : spec.sectors) {
    const Eigen::VectorXd w = (-beta * (s.energies.array() - e_min) - log_z).exp().matrix();
    const Eigen::MatrixXd block = s.vectors * w.asDiagonal() * s.vectors.transpose();
    const Index d = static_cast<Index>(s.indices.size());
    for (Index b = 0; b < d; ++b)
      for (Index a = 0; a < d; ++a) rho(s.indices[static_cast<std::size_t>(a)], s.indices[static_cast<std::size_t>(b)]) = block(a, b);
  }
  return GibbsState{DensityMatrix<double>::normalized(std::move(rho)), e_min - log_z / beta};
}

double exact_grand_potential(const FockOperator& H, double beta, double mu, const FockBasis& basis) {
  if (!(beta > 0.0)) throw InvalidArgument("beta must be positive");
  const Spectrum spec = diagonalize(shifted_hamiltonian(H, mu, basis), false);
  const double e_min = spec.min_energy();
  return e_min - shifted_log_partition(spec, beta, e_min) / beta;
}

double grand_potential_functional(const DensityMatrix<double>& rho, const FockOperator& H, double beta, double mu,
                                  const FockBasis& basis) {
  if (!(beta > 0.0)) throw InvalidArgument("beta must be positive");
  return expectation(shifted_hamiltonian(H, mu, basis), rho) - von_neumann_entropy(rho) / beta;
}

Observables observables(const DensityMatrix<double>& rho, const FockBasis& basis, const FockOperator& H,
                        double beta, double mu) {
  Observables o;
  o.N_exp = expectation(number_operator(basis), rho);
  if (basis.zero_mode()) {
    o.n0_exp = expectation(zero_mode_number(basis), rho);
    o.a0_exp = Complex(expectation(ladder(ModeIndex::Zero(), basis, false), rho), 0.0);
  }
  const Index M = basis.mode_count();
  std::vector<FockOperator> a;
  a.reserve(static_cast<std::size_t>(M));
  for (const auto& p : basis.modes()) a.push_back(ladder(p, basis, false));
  o.one_pdm.resize(M, M);
  for (Index p = 0; p < M; ++p)
    for (Index q = 0; q < M; ++q)
      o.one_pdm(p, q) = expectation(a[static_cast<std::size_t>(q)].adjoint() * a[static_cast<std::size_t>(p)], rho);
  o.entropy = von_neumann_entropy(rho);
  o.grand_potential = grand_potential_functional(rho, H, beta, mu, basis);
  return o;
}

DensityMatrix<double> trial_state(const FockBasis& basis, double w, double beta, double mu_tilde) {
  if (!(beta > 0.0)) throw InvalidArgument("beta must be positive");
  if (!(mu_tilde < 0.0)) throw InvalidArgument("mu_tilde must be negative");
  const Index zero = basis.mode_position(ModeIndex::Zero());
  const Eigen::VectorXcd c = coherent_overlaps(Complex(w, 0.0), basis.n_max());

  // Group basis states by their excited configuration.
  std::map<std::vector<int>, std::vector<Index>> groups;
  std::vector<double> thermal(static_cast<std::size_t>(basis.dim()));
  for (Index i = 0; i < basis.dim(); ++i) {
    std::vector<int> rest = basis.state(i);
    double g = 1.0;
    for (Index k = 0; k < basis.mode_count(); ++k) {
      if (k == zero) continue;
      const double x = beta * (kinetic_energy(basis.modes()[static_cast<std::size_t>(k)]) - mu_tilde);
      g *= -std::expm1(-x) * std::exp(-x * rest[static_cast<std::size_t>(k)]);
    }
    thermal[static_cast<std::size_t>(i)] = g;
    rest[static_cast<std::size_t>(zero)] = 0;
    groups[rest].push_back(i);
  }
  Eigen::MatrixXd rho = Eigen::MatrixXd::Zero(basis.dim(), basis.dim());
  for (const auto& [rest, members] : groups)
    for (Index i : members)
      for (Index j : members) {
        const double ci = c(basis.occupation(i, zero)).real();
        const double cj = c(basis.occupation(j, zero)).real();
        rho(i, j) = ci * cj * thermal[static_cast<std::size_t>(i)];
      }
  return DensityMatrix<double>::normalized(std::move(rho));
}

}  // namespace mfbose
