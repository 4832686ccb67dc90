#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <vector>

#include "mfbose/fock/basis.hpp"
#include "mfbose/selfconsistent.hpp"

namespace mfbose {

using SparseMatrix = Eigen::SparseMatrix<double>;

/// A real operator on a FockBasis. Storage is sparse; dense() materializes it.
/// Every binary operation checks that both sides share a basis fingerprint.
class FockOperator {
public:
  FockOperator(const FockBasis& basis, SparseMatrix matrix);
  FockOperator(std::uint64_t fingerprint, SparseMatrix matrix);

  static FockOperator zero(const FockBasis& basis);
  static FockOperator identity(const FockBasis& basis);

  const SparseMatrix& matrix() const { return matrix_; }
  Index dim() const { return matrix_.rows(); }
  std::uint64_t fingerprint() const { return fingerprint_; }
  Eigen::MatrixXd dense() const { return Eigen::MatrixXd(matrix_); }

  FockOperator adjoint() const;
  bool is_symmetric(double tol = 0.0) const;
  /// Max |A_ij| (the entrywise max norm).
  double max_abs() const;

  FockOperator& operator+=(const FockOperator& other);
  FockOperator& operator-=(const FockOperator& other);
  FockOperator& operator*=(double s);

  void require_same_basis(std::uint64_t fingerprint) const;

private:
  std::uint64_t fingerprint_;
  SparseMatrix matrix_;
};

FockOperator operator+(FockOperator a, const FockOperator& b);
FockOperator operator-(FockOperator a, const FockOperator& b);
FockOperator operator*(const FockOperator& a, const FockOperator& b);
FockOperator operator*(double s, FockOperator a);
FockOperator commutator(const FockOperator& a, const FockOperator& b);

/// a_p (create = false) or a_p^* (create = true). Creation is the transpose of
/// annihilation, so states pushed above a cap are dropped.
FockOperator ladder(const ModeIndex& p, const FockBasis& basis, bool create);

/// N = sum_p a_p^* a_p, diagonal.
FockOperator number_operator(const FockBasis& basis);
/// N_+ = N - a_0^* a_0.
FockOperator excited_number_operator(const FockBasis& basis);
/// a_0^* a_0; throws UnknownMode without a zero mode.
FockOperator zero_mode_number(const FockBasis& basis);
/// sum_p |p|^2 a_p^* a_p
FockOperator kinetic_operator(const FockBasis& basis);

/// (1 / 2 eta) sum vhat(u' - u) a_{u'}^* a_{v'}^* a_u a_v over mode quadruples
/// with u + v = u' + v'. Transfers leaving the mode set are dropped. The
/// matrix is the exact compression of the interaction onto the truncated space.
FockOperator interaction_operator(const Interaction& vhat, double eta, const FockBasis& basis);

/// Kinetic plus interaction term.
FockOperator build_hamiltonian(const ModelParams& params, const FockBasis& basis);

/// H + delta a_0^* a_0 + lambda sqrt(n_ref) (a_0 + a_0^*).
FockOperator perturb_hamiltonian(const FockOperator& H, const FockBasis& basis, double lambda, double delta,
                                 double n_ref);

/// Index sets of the connected components of the sparsity graph of a
/// symmetric matrix; the matrix is block diagonal over them.
std::vector<std::vector<Index>> connected_sectors(const SparseMatrix& m);

struct SectorSpectrum {
  std::vector<Index> indices;
  Eigen::VectorXd energies;
  Eigen::MatrixXd vectors;  // empty unless requested
};

struct Spectrum {
  Index dim = 0;
  std::vector<SectorSpectrum> sectors;

  double min_energy() const;
  Eigen::VectorXd all_energies() const;
};

/// Eigen-decomposition of a symmetric operator, one dense solve per sector.
Spectrum diagonalize(const FockOperator& op, bool with_vectors = true);

/// Lowest eigenvalue of V - vhat0 N^2 / (2 eta) + v(0) N / (2 eta).
double onsager_gap(const ModelParams& params, const FockBasis& basis);
/// Same with only vhat >= 0 required (vhat(0) may vanish).
double onsager_gap(const Interaction& vhat, double eta, const FockBasis& basis);

}  // namespace mfbose
