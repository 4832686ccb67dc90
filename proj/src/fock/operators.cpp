#include "mfbose/fock/operators.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numeric>

#include "mfbose/errors.hpp"

namespace mfbose {

namespace {

using Triplets = std::vector<Eigen::Triplet<double>>;

SparseMatrix from_triplets(Index dim, const Triplets& t) {
  SparseMatrix m(dim, dim);
  m.setFromTriplets(t.begin(), t.end());
  m.makeCompressed();
  return m;
}

FockOperator diagonal(const FockBasis& basis, const std::function<double(Index)>& entry) {
  Triplets t;
  t.reserve(static_cast<std::size_t>(basis.dim()));
  for (Index i = 0; i < basis.dim(); ++i) {
    const double v = entry(i);
    if (v != 0.0) t.emplace_back(i, i, v);
  }
  return FockOperator(basis, from_triplets(basis.dim(), t));
}

}  // namespace

FockOperator::FockOperator(const FockBasis& basis, SparseMatrix matrix)
    : FockOperator(basis.fingerprint(), std::move(matrix)) {
  if (matrix_.rows() != basis.dim() || matrix_.cols() != basis.dim())
    throw BasisMismatch("operator dimension does not match its basis");
}

FockOperator::FockOperator(std::uint64_t fingerprint, SparseMatrix matrix)
    : fingerprint_(fingerprint), matrix_(std::move(matrix)) {
  if (matrix_.rows() != matrix_.cols()) throw InvalidArgument("Fock operators are square");
}

FockOperator FockOperator::zero(const FockBasis& basis) {
  return FockOperator(basis, SparseMatrix(basis.dim(), basis.dim()));
}

FockOperator FockOperator::identity(const FockBasis& basis) {
  return diagonal(basis, [](Index) { return 1.0; });
}

FockOperator FockOperator::adjoint() const {
  SparseMatrix t = matrix_.transpose();
  return FockOperator(fingerprint_, std::move(t));
}

bool FockOperator::is_symmetric(double tol) const {
  const SparseMatrix diff = matrix_ - SparseMatrix(matrix_.transpose());
  for (Index k = 0; k < diff.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(diff, k); it; ++it)
      if (std::abs(it.value()) > tol) return false;
  return true;
}

double FockOperator::max_abs() const {
  double m = 0.0;
  for (Index k = 0; k < matrix_.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(matrix_, k); it; ++it) m = std::max(m, std::abs(it.value()));
  return m;
}

void FockOperator::require_same_basis(std::uint64_t fingerprint) const {
  if (fingerprint != fingerprint_) throw BasisMismatch("operators live on different Fock bases");
}

FockOperator& FockOperator::operator+=(const FockOperator& other) {
  require_same_basis(other.fingerprint_);
  matrix_ += other.matrix_;
  return *this;
}

FockOperator& FockOperator::operator-=(const FockOperator& other) {
  require_same_basis(other.fingerprint_);
  matrix_ -= other.matrix_;
  return *this;
}

FockOperator& FockOperator::operator*=(double s) {
  matrix_ *= s;
  return *this;
}

FockOperator operator+(FockOperator a, const FockOperator& b) { return a += b; }
FockOperator operator-(FockOperator a, const FockOperator& b) { return a -= b; }
FockOperator operator*(double s, FockOperator a) { return a *= s; }

FockOperator operator*(const FockOperator& a, const FockOperator& b) {
  a.require_same_basis(b.fingerprint());
  SparseMatrix prod = a.matrix() * b.matrix();
  return FockOperator(a.fingerprint(), std::move(prod));
}

FockOperator commutator(const FockOperator& a, const FockOperator& b) { return a * b - b * a; }

FockOperator ladder(const ModeIndex& p, const FockBasis& basis, bool create) {
  const Index k = basis.mode_position(p);
  Triplets t;
  std::vector<int> occ;
  for (Index j = 0; j < basis.dim(); ++j) {
    const int n = basis.occupation(j, k);
    if (n == 0) continue;
    occ = basis.state(j);
    --occ[static_cast<std::size_t>(k)];
    const Index i = *basis.find(occ);  // lowering never leaves the caps
    t.emplace_back(i, j, std::sqrt(static_cast<double>(n)));
  }
  FockOperator a(basis, from_triplets(basis.dim(), t));
  return create ? a.adjoint() : a;
}

FockOperator number_operator(const FockBasis& basis) {
  return diagonal(basis, [&](Index i) { return static_cast<double>(basis.total(i)); });
}

FockOperator zero_mode_number(const FockBasis& basis) {
  const Index k = basis.mode_position(ModeIndex::Zero());
  return diagonal(basis, [&](Index i) { return static_cast<double>(basis.occupation(i, k)); });
}

FockOperator excited_number_operator(const FockBasis& basis) {
  const auto k = basis.zero_mode();
  return diagonal(basis, [&](Index i) {
    return static_cast<double>(basis.total(i) - (k ? basis.occupation(i, *k) : 0));
  });
}

FockOperator kinetic_operator(const FockBasis& basis) {
  return diagonal(basis, [&](Index i) {
    double e = 0.0;
    for (Index k = 0; k < basis.mode_count(); ++k)
      e += kinetic_energy(basis.modes()[static_cast<std::size_t>(k)]) * basis.occupation(i, k);
    return e;
  });
}

FockOperator interaction_operator(const Interaction& vhat, double eta, const FockBasis& basis) {
  if (!(eta > 0.0)) throw InvalidArgument("eta must be positive");
  const Index M = basis.mode_count();
  const auto& modes = basis.modes();
  std::map<ModeIndex, Index, ModeLess> position;
  for (Index k = 0; k < M; ++k) position.emplace(modes[static_cast<std::size_t>(k)], k);

  // For each (u, v, u') the partner v' = u + v - u' and the coupling vhat(u' - u).
  struct Channel {
    Index u, v, up, vp;
    double coupling;
  };
  std::vector<Channel> channels;
  for (Index u = 0; u < M; ++u)
    for (Index v = 0; v < M; ++v)
      for (Index up = 0; up < M; ++up) {
        const ModeIndex target = modes[static_cast<std::size_t>(u)] + modes[static_cast<std::size_t>(v)] -
                                 modes[static_cast<std::size_t>(up)];
        const auto it = position.find(target);
        if (it == position.end()) continue;
        const double c = vhat(ModeIndex(modes[static_cast<std::size_t>(up)] - modes[static_cast<std::size_t>(u)]));
        if (c == 0.0) continue;
        channels.push_back({u, v, up, it->second, c / (2.0 * eta)});
      }

  Triplets t;
  std::vector<int> occ;
  for (Index j = 0; j < basis.dim(); ++j) {
    for (const auto& ch : channels) {
      occ = basis.state(j);
      auto& nu = occ[static_cast<std::size_t>(ch.u)];
      if (nu == 0) continue;
      double amp = std::sqrt(static_cast<double>(nu));
      --nu;
      auto& nv = occ[static_cast<std::size_t>(ch.v)];
      if (nv == 0) continue;
      amp *= std::sqrt(static_cast<double>(nv));
      --nv;
      auto& nvp = occ[static_cast<std::size_t>(ch.vp)];
      ++nvp;
      amp *= std::sqrt(static_cast<double>(nvp));
      auto& nup = occ[static_cast<std::size_t>(ch.up)];
      ++nup;
      amp *= std::sqrt(static_cast<double>(nup));
      const auto i = basis.find(occ);
      if (!i) continue;
      t.emplace_back(*i, j, ch.coupling * amp);
    }
  }
  return FockOperator(basis, from_triplets(basis.dim(), t));
}

FockOperator build_hamiltonian(const ModelParams& params, const FockBasis& basis) {
  params.validate();
  return kinetic_operator(basis) + interaction_operator(params.vhat, params.eta, basis);
}

FockOperator perturb_hamiltonian(const FockOperator& H, const FockBasis& basis, double lambda, double delta,
                                 double n_ref) {
  if (!(n_ref >= 0.0)) throw InvalidArgument("n_ref must be non-negative");
  H.require_same_basis(basis.fingerprint());
  FockOperator out = H;
  if (delta != 0.0) out += delta * zero_mode_number(basis);
  if (lambda != 0.0) {
    const FockOperator a0 = ladder(ModeIndex::Zero(), basis, false);
    out += (lambda * std::sqrt(n_ref)) * (a0 + a0.adjoint());
  }
  return out;
}

std::vector<std::vector<Index>> connected_sectors(const SparseMatrix& m) {
  const Index n = m.rows();
  std::vector<Index> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), Index{0});
  const auto root = [&](Index x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  };
  for (Index k = 0; k < m.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(m, k); it; ++it) {
      if (it.value() == 0.0) continue;
      const Index a = root(it.row());
      const Index b = root(it.col());
      if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
    }
  std::map<Index, std::vector<Index>> groups;
  for (Index i = 0; i < n; ++i) groups[root(i)].push_back(i);
  std::vector<std::vector<Index>> out;
  out.reserve(groups.size());
  for (auto& [r, members] : groups) out.push_back(std::move(members));
  return out;
}

double Spectrum::min_energy() const {
  double e = std::numeric_limits<double>::infinity();
  for (const auto& s : sectors) e = std::min(e, s.energies.minCoeff());
  return e;
}

Eigen::VectorXd Spectrum::all_energies() const {
  Eigen::VectorXd e(dim);
  Index k = 0;
  for (const auto& s : sectors) {
    e.segment(k, s.energies.size()) = s.energies;
    k += s.energies.size();
  }
  std::sort(e.data(), e.data() + e.size());
  return e;
}

Spectrum diagonalize(const FockOperator& op, bool with_vectors) {
  if (!op.is_symmetric(1e-12 * std::max(1.0, op.max_abs())))
    throw InvalidArgument("diagonalize expects a symmetric operator");
  Spectrum spec;
  spec.dim = op.dim();
  const SparseMatrix& m = op.matrix();
  for (auto& idx : connected_sectors(m)) {
    const Index d = static_cast<Index>(idx.size());
    Eigen::MatrixXd block = Eigen::MatrixXd::Zero(d, d);
    std::map<Index, Index> local;
    for (Index a = 0; a < d; ++a) local.emplace(idx[static_cast<std::size_t>(a)], a);
    for (Index a = 0; a < d; ++a) {
      const Index col = idx[static_cast<std::size_t>(a)];
      for (SparseMatrix::InnerIterator it(m, col); it; ++it) block(local.at(it.row()), a) = it.value();
    }
    SectorSpectrum s;
    s.indices = std::move(idx);
    if (d == 1) {
      s.energies = block.diagonal();
      if (with_vectors) s.vectors = Eigen::MatrixXd::Identity(1, 1);
    } else {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(block, with_vectors ? Eigen::ComputeEigenvectors
                                                                            : Eigen::EigenvaluesOnly);
      s.energies = es.eigenvalues();
      if (with_vectors) s.vectors = es.eigenvectors();
    }
    spec.sectors.push_back(std::move(s));
  }
  return spec;
}

double onsager_gap(const ModelParams& params, const FockBasis& basis) {
  return onsager_gap(params.vhat, params.eta, basis);
}

double onsager_gap(const Interaction& vhat, double eta, const FockBasis& basis) {
  for (const auto& [p, c] : vhat.coefficients())
    if (!(c >= 0.0)) throw InvalidArgument("Onsager's bound needs vhat >= 0");
  const FockOperator V = interaction_operator(vhat, eta, basis);
  const double vhat0 = vhat.vhat0();
  const double v0 = vhat.v0();
  const FockOperator shift = diagonal(basis, [&](Index i) {
    const double n = basis.total(i);
    return -vhat0 * n * n / (2.0 * eta) + v0 * n / (2.0 * eta);
  });
  return diagonalize(V + shift, false).min_energy();
}

}  // namespace mfbose
