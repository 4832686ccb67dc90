#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <complex>
#include <limits>
#include <random>
#include <type_traits>

#include "mfbose/errors.hpp"
#include "mfbose/fock/operators.hpp"

namespace mfbose {

template <typename Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

inline constexpr double kStateTolerance = 1e-12;

/// Entropy-type functions with 0 ln 0 = 0.
inline double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

/// sigma(x) = x ln x - (1 + x) ln(1 + x)
inline double bose_sigma(double x) { return xlogx(x) - (1.0 + x) * std::log1p(x); }

/// sigma'(x) = ln(x / (1 + x)); -inf at 0.
inline double bose_sigma_prime(double x) {
  return x > 0.0 ? std::log(x) - std::log1p(x) : -std::numeric_limits<double>::infinity();
}

/// A density matrix: Hermitian, trace one, positive semidefinite (eigenvalues
/// >= -1e-12, trace within 1e-12 of one). Real for Gibbs states of real
/// Hamiltonians, complex for coherent-state conditionals.
template <typename Scalar>
class DensityMatrix {
public:
  using Matrix = DenseMatrix<Scalar>;

  explicit DensityMatrix(Matrix rho, double tol = kStateTolerance) : rho_(std::move(rho)) {
    if (rho_.rows() != rho_.cols()) throw InvalidState("density matrix must be square");
    const double herm = (rho_ - rho_.adjoint()).cwiseAbs().maxCoeff();
    if (!(herm <= tol * std::max<double>(1.0, rho_.cwiseAbs().maxCoeff())))
      throw InvalidState("density matrix is not Hermitian");
    rho_ = (0.5 * (rho_ + rho_.adjoint())).eval();
    const double tr = std::real(rho_.trace());
    if (!(std::abs(tr - 1.0) <= tol)) throw InvalidState("density matrix trace differs from one");
    Eigen::SelfAdjointEigenSolver<Matrix> es(rho_, Eigen::ComputeEigenvectors);
    if (es.eigenvalues().size() > 0 && es.eigenvalues().minCoeff() < -tol)
      throw InvalidState("density matrix has a negative eigenvalue");
    eigenvalues_ = es.eigenvalues();
    eigenvectors_ = es.eigenvectors();
  }

  /// Divides by the trace before validating.
  static DensityMatrix normalized(Matrix m) {
    const double tr = std::real(m.trace());
    if (!(tr > 0.0)) throw InvalidState("cannot normalize an operator with non-positive trace");
    m /= Scalar(tr);
    return DensityMatrix(std::move(m));
  }

  const Matrix& matrix() const { return rho_; }
  Index dim() const { return rho_.rows(); }
  const Eigen::VectorXd& eigenvalues() const { return eigenvalues_; }
  const Matrix& eigenvectors() const { return eigenvectors_; }

private:
  Matrix rho_;
  Eigen::VectorXd eigenvalues_;
  Matrix eigenvectors_;
};

/// -tr rho ln rho
inline double von_neumann_entropy(const Eigen::VectorXd& eigenvalues) {
  double s = 0.0;
  for (Index i = 0; i < eigenvalues.size(); ++i) s -= xlogx(std::max(0.0, eigenvalues(i)));
  return s;
}

template <typename Scalar>
double von_neumann_entropy(const DensityMatrix<Scalar>& rho) {
  return von_neumann_entropy(rho.eigenvalues());
}

/// S(rho, ref) = tr rho (ln rho - ln ref); +inf when rho is not supported inside ref.
template <typename Scalar>
double relative_entropy(const DensityMatrix<Scalar>& rho, const DensityMatrix<Scalar>& ref) {
  if (rho.dim() != ref.dim()) throw InvalidArgument("relative entropy of states of different dimension");
  double cross = 0.0;
  const auto& w = ref.eigenvectors();
  for (Index j = 0; j < ref.dim(); ++j) {
    const double weight = std::real((w.col(j).adjoint() * rho.matrix() * w.col(j))(0, 0));
    const double q = ref.eigenvalues()(j);
    if (weight <= 1e-300) continue;
    if (q <= 0.0) return std::numeric_limits<double>::infinity();
    cross += weight * std::log(q);
  }
  return std::max(0.0, -von_neumann_entropy(rho) - cross);
}

/// s(a, b) = sum_ij |<psi_i, phi_j>|^2 (sigma(a_i) - sigma(b_j) - sigma'(b_j)(a_i - b_j))
/// for positive semidefinite a, b with eigenpairs (a_i, psi_i), (b_j, phi_j).
template <typename Scalar>
double bosonic_relative_entropy(const DenseMatrix<Scalar>& a, const DenseMatrix<Scalar>& b) {
  if (a.rows() != b.rows() || a.rows() != a.cols() || b.rows() != b.cols())
    throw InvalidArgument("bosonic relative entropy needs square matrices of equal size");
  Eigen::SelfAdjointEigenSolver<DenseMatrix<Scalar>> ea(a), eb(b);
  if (ea.eigenvalues().minCoeff() < -kStateTolerance || eb.eigenvalues().minCoeff() < -kStateTolerance)
    throw InvalidArgument("bosonic relative entropy needs positive semidefinite arguments");
  const DenseMatrix<Scalar> overlap = ea.eigenvectors().adjoint() * eb.eigenvectors();
  double s = 0.0;
  for (Index i = 0; i < a.rows(); ++i) {
    const double ai = std::max(0.0, ea.eigenvalues()(i));
    for (Index j = 0; j < b.rows(); ++j) {
      const double w = std::norm(overlap(i, j));
      if (w == 0.0) continue;
      const double bj = std::max(0.0, eb.eigenvalues()(j));
      const double diff = ai - bj;
      if (bj == 0.0 && diff > 0.0) return std::numeric_limits<double>::infinity();
      const double slope = bj == 0.0 ? 0.0 : bose_sigma_prime(bj) * diff;
      s += w * (bose_sigma(ai) - bose_sigma(bj) - slope);
    }
  }
  return s;
}

/// Right-hand side of the coercivity bound c1 ||a - b||_1^2 / (||1 + b|| tr(a + b)).
template <typename Scalar>
double bosonic_entropy_lower_bound(const DenseMatrix<Scalar>& a, const DenseMatrix<Scalar>& b, double c1) {
  Eigen::SelfAdjointEigenSolver<DenseMatrix<Scalar>> ed(a - b, Eigen::EigenvaluesOnly), eb(b, Eigen::EigenvaluesOnly);
  const double trace_norm = ed.eigenvalues().cwiseAbs().sum();
  const double op_norm = 1.0 + std::max(0.0, eb.eigenvalues().maxCoeff());
  const double tr = std::real((a + b).trace());
  if (!(tr > 0.0)) return 0.0;
  return c1 * trace_norm * trace_norm / (op_norm * tr);
}

struct EntropyReport {
  double von_neumann = 0.0;
  double relative = 0.0;
  double bosonic_relative = 0.0;
};

template <typename Scalar>
EntropyReport entropies(const DensityMatrix<Scalar>& state, const DensityMatrix<Scalar>& ref,
                        const DenseMatrix<Scalar>& gamma_a, const DenseMatrix<Scalar>& gamma_b) {
  return {von_neumann_entropy(state), relative_entropy(state, ref), bosonic_relative_entropy(gamma_a, gamma_b)};
}

/// tr[A rho] for a real sparse operator and a dense state.
template <typename Scalar>
Scalar expectation(const FockOperator& op, const DensityMatrix<Scalar>& rho) {
  if (op.dim() != rho.dim()) throw BasisMismatch("operator and state dimensions differ");
  Scalar s(0);
  const SparseMatrix& m = op.matrix();
  for (Index k = 0; k < m.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(m, k); it; ++it) s += it.value() * rho.matrix()(it.col(), it.row());
  return s;
}

/// Random full-rank state X X^* / tr with Gaussian X; complex entries when Scalar is complex.
template <typename Scalar>
DensityMatrix<Scalar> random_density_matrix(Index dim, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  DenseMatrix<Scalar> x(dim, dim);
  for (Index j = 0; j < dim; ++j)
    for (Index i = 0; i < dim; ++i) {
      if constexpr (std::is_same_v<Scalar, double>) {
        x(i, j) = g(rng);
      } else {
        const double re = g(rng);
        const double im = g(rng);
        x(i, j) = Scalar(re, im);
      }
    }
  return DensityMatrix<Scalar>::normalized(x * x.adjoint());
}

/// Random positive semidefinite matrix X X^* (not normalized).
template <typename Scalar>
DenseMatrix<Scalar> random_positive_matrix(Index dim, std::mt19937_64& rng, double scale = 1.0) {
  std::normal_distribution<double> g(0.0, 1.0);
  DenseMatrix<Scalar> x(dim, dim);
  for (Index j = 0; j < dim; ++j)
    for (Index i = 0; i < dim; ++i) {
      if constexpr (std::is_same_v<Scalar, double>) {
        x(i, j) = g(rng);
      } else {
        const double re = g(rng);
        const double im = g(rng);
        x(i, j) = Scalar(re, im);
      }
    }
  return scale * x * x.adjoint();
}

/// e^{-beta (H - mu N)} / Z together with Phi = -(1/beta) ln Z, computed from
/// a sector-wise spectrum shifted by its ground energy.
struct GibbsState {
  DensityMatrix<double> state;
  double grand_potential = 0.0;
};

GibbsState gibbs_state(const FockOperator& H, double beta, double mu, const FockBasis& basis);

/// -(1/beta) ln tr e^{-beta (H - mu N)} without forming the state.
double exact_grand_potential(const FockOperator& H, double beta, double mu, const FockBasis& basis);

/// tr[(H - mu N) rho] - S(rho) / beta
double grand_potential_functional(const DensityMatrix<double>& rho, const FockOperator& H, double beta, double mu,
                                  const FockBasis& basis);

struct Observables {
  double N_exp = 0.0;
  double n0_exp = 0.0;
  Complex a0_exp{0.0, 0.0};
  /// gamma(p, q) = tr[a_q^* a_p rho], indexed by mode positions.
  Eigen::MatrixXd one_pdm;
  double grand_potential = 0.0;
  double entropy = 0.0;
};

Observables observables(const DensityMatrix<double>& rho, const FockBasis& basis, const FockOperator& H,
                        double beta, double mu);

/// |w><w| on the zero mode tensored with the ideal Gibbs state of the excited
/// modes at (beta, mu_tilde), compressed to the basis and renormalized.
DensityMatrix<double> trial_state(const FockBasis& basis, double w, double beta, double mu_tilde);

}  // namespace mfbose
