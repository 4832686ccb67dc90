#include "mfbose/fock/coherent.hpp"

#include <cmath>
#include <map>

namespace mfbose {

namespace {

// e^{-r^2/2} r^n / sqrt(n!) for n = 0..n_max, evaluated in log space.
Eigen::VectorXd radial_overlaps(double r, int n_max) {
  Eigen::VectorXd psi = Eigen::VectorXd::Zero(n_max + 1);
  if (r == 0.0) {
    psi(0) = 1.0;
    return psi;
  }
  const double log_r = std::log(r);
  for (int n = 0; n <= n_max; ++n) psi(n) = std::exp(-0.5 * r * r + n * log_r - 0.5 * std::lgamma(n + 1.0));
  return psi;
}

}  // namespace

Eigen::VectorXcd coherent_overlaps(Complex z, int n_max) {
  if (n_max < 0) throw InvalidArgument("n_max must be non-negative");
  const Eigen::VectorXd radial = radial_overlaps(std::abs(z), n_max);
  const double phase = std::arg(z);
  Eigen::VectorXcd c(n_max + 1);
  for (int n = 0; n <= n_max; ++n) c(n) = radial(n) * std::polar(1.0, n * phase);
  return c;
}

CoherentState coherent_state(Complex z, int n_max, double max_error) {
  CoherentState out;
  out.vector = coherent_overlaps(z, n_max);
  const double mass = out.vector.squaredNorm();
  out.vector /= std::sqrt(mass);
  double err = std::max(0.0, 1.0 - mass);
  const double z2 = std::norm(z);
  if (z2 > 0.0) {
    double mean = 0.0;
    for (int n = 0; n <= n_max; ++n) mean += n * std::norm(out.vector(n));
    err = std::max(err, std::abs(mean / z2 - 1.0));
  }
  out.truncation_error = err;
  if (err > max_error)
    throw TruncationUnfaithful("coherent state truncation error " + std::to_string(err) + " exceeds " +
                               std::to_string(max_error));
  return out;
}

PolarQuadrature::PolarQuadrature(int radial_order, int angular_order, double z_max)
    : angular_order_(angular_order), z_max_(z_max) {
  if (radial_order < 1 || angular_order < 1) throw InvalidArgument("quadrature orders must be positive");
  if (!(z_max > 0.0)) throw InvalidArgument("z_max must be positive");
  const QuadratureRule rule = gauss_legendre(radial_order, 0.0, z_max);
  radii_ = rule.nodes;
  radial_weights_.resize(radii_.size());
  for (std::size_t a = 0; a < radii_.size(); ++a) radial_weights_[a] = radii_[a] * rule.weights[a] / M_PI;
}

double PolarQuadrature::angle(int b) const { return kTwoPi * b / angular_order_; }

Complex PolarQuadrature::node(Index k) const {
  const auto a = static_cast<std::size_t>(k / angular_order_);
  return std::polar(radii_[a], angle(static_cast<int>(k % angular_order_)));
}

double PolarQuadrature::weight(Index k) const {
  return radial_weights_[static_cast<std::size_t>(k / angular_order_)] * kTwoPi / angular_order_;
}

double LowerSymbol::zeta_entropy() const {
  double s = 0.0;
  for (std::size_t k = 0; k < zeta.size(); ++k) s -= weights[k] * xlogx(zeta[k]);
  return s;
}

double LowerSymbol::mean_conditional_entropy() const {
  double s = 0.0;
  for (std::size_t k = 0; k < zeta.size(); ++k) s += weights[k] * zeta[k] * conditional_entropy[k];
  return s;
}

LowerSymbol lower_symbol(const DensityMatrix<double>& rho, const FockBasis& basis, const PolarQuadrature& quad,
                         double mass_tolerance, bool keep_conditionals) {
  if (rho.dim() != basis.dim()) throw BasisMismatch("state dimension does not match the basis");
  const Index zero = basis.mode_position(ModeIndex::Zero());
  const int n_max = basis.n_max();

  LowerSymbol out;
  std::map<std::vector<int>, Index> rest_index;
  std::vector<Index> rest_of(static_cast<std::size_t>(basis.dim()));
  std::vector<int> n0_of(static_cast<std::size_t>(basis.dim()));
  for (Index i = 0; i < basis.dim(); ++i) {
    std::vector<int> rest = basis.state(i);
    n0_of[static_cast<std::size_t>(i)] = rest[static_cast<std::size_t>(zero)];
    rest.erase(rest.begin() + zero);
    auto [it, fresh] = rest_index.emplace(rest, static_cast<Index>(out.rest_states.size()));
    if (fresh) out.rest_states.push_back(rest);
    rest_of[static_cast<std::size_t>(i)] = it->second;
  }
  const Index R = static_cast<Index>(out.rest_states.size());
  const Eigen::MatrixXd& g = rho.matrix();

  out.nodes.reserve(static_cast<std::size_t>(quad.size()));
  for (int a = 0; a < quad.radial_order(); ++a) {
    const Eigen::VectorXd psi = radial_overlaps(quad.radii()[static_cast<std::size_t>(a)], n_max);
    // <z|rho|z> = sum_k e^{i k theta} A_k with k = n_j - n_i.
    std::vector<Eigen::MatrixXd> A(static_cast<std::size_t>(2 * n_max + 1), Eigen::MatrixXd::Zero(R, R));
    for (Index j = 0; j < basis.dim(); ++j) {
      const int nj = n0_of[static_cast<std::size_t>(j)];
      const Index rj = rest_of[static_cast<std::size_t>(j)];
      for (Index i = 0; i < basis.dim(); ++i) {
        const double v = g(i, j);
        if (v == 0.0) continue;
        const int ni = n0_of[static_cast<std::size_t>(i)];
        A[static_cast<std::size_t>(nj - ni + n_max)](rest_of[static_cast<std::size_t>(i)], rj) += psi(ni) * psi(nj) * v;
      }
    }
    for (int b = 0; b < quad.angular_order(); ++b) {
      const double theta = quad.angle(b);
      Eigen::MatrixXcd gz = Eigen::MatrixXcd::Zero(R, R);
      for (int k = -n_max; k <= n_max; ++k) {
        const auto& Ak = A[static_cast<std::size_t>(k + n_max)];
        if (Ak.isZero(0.0)) continue;
        gz += std::polar(1.0, k * theta) * Ak.cast<Complex>();
      }
      const Index node = static_cast<Index>(a) * quad.angular_order() + b;
      const double zeta = std::max(0.0, gz.trace().real());
      out.nodes.push_back(quad.node(node));
      out.weights.push_back(quad.weight(node));
      out.zeta.push_back(zeta);
      double entropy = 0.0;
      if (zeta > 1e-300) {
        gz /= zeta;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(gz, Eigen::EigenvaluesOnly);
        entropy = von_neumann_entropy(es.eigenvalues());
      }
      out.conditional_entropy.push_back(entropy);
      if (keep_conditionals) out.conditional.push_back(std::move(gz));
    }
  }
  for (std::size_t k = 0; k < out.zeta.size(); ++k) out.mass += out.weights[k] * out.zeta[k];
  if (!(std::abs(out.mass - 1.0) <= mass_tolerance))
    throw QuadratureNotConverged("lower symbol mass " + std::to_string(out.mass) + " deviates from 1");
  return out;
}

double UpperSymbolReport::max_deviation() const {
  return std::max({identity_deviation, number_deviation, number_squared_deviation});
}

UpperSymbolReport upper_symbol_check(int n_max, const PolarQuadrature& quad, double nu, int n_safe) {
  if (n_safe < 0 || n_safe > n_max) throw InvalidArgument("n_safe must lie in [0, n_max]");
  const Index d = n_max + 1;
  Eigen::MatrixXcd id = Eigen::MatrixXcd::Zero(d, d), num = id, num2 = id;
  for (Index k = 0; k < quad.size(); ++k) {
    const Complex z = quad.node(k);
    const double w = quad.weight(k);
    const Eigen::VectorXcd psi = coherent_overlaps(z, n_max);
    const Eigen::MatrixXcd proj = psi * psi.adjoint();
    const double r2 = std::norm(z);
    const double s = r2 + nu;
    id += w * proj;
    num += (w * (r2 - 1.0)) * proj;
    num2 += (w * (s * s - 3.0 * s + nu + 1.0)) * proj;
  }
  UpperSymbolReport rep;
  rep.n_max = n_max;
  rep.n_safe = n_safe;
  rep.nu = nu;
  for (Index n = 0; n <= n_safe; ++n)
    for (Index m = 0; m <= n_safe; ++m) {
      const double e_id = n == m ? 1.0 : 0.0;
      const double e_num = n == m ? static_cast<double>(n) : 0.0;
      const double e_num2 = n == m ? (n + nu) * (n + nu) : 0.0;
      rep.identity_deviation = std::max(rep.identity_deviation, std::abs(id(n, m) - e_id));
      rep.number_deviation = std::max(rep.number_deviation, std::abs(num(n, m) - e_num));
      rep.number_squared_deviation = std::max(rep.number_squared_deviation, std::abs(num2(n, m) - e_num2));
    }
  return rep;
}

void require_converged(const UpperSymbolReport& report, double tol) {
  if (!(report.max_deviation() <= tol))
    throw QuadratureNotConverged("upper symbol deviation " + std::to_string(report.max_deviation()) +
                                 " exceeds " + std::to_string(tol));
}

}  // namespace mfbose
