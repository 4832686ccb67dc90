#pragma once

// Dense reference constructions on truncated Fock spaces, built from scratch
// (own enumeration, own ladder matrices) so they share no code with the library.

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <vector>

namespace oracle {

struct DenseFock {
  int modes = 0;
  std::vector<std::vector<int>> states;
  std::map<std::vector<int>, int> index;
};

// All tuples with entries <= n_max and sum <= N_max, in arbitrary (odometer) order.
inline DenseFock dense_fock(int modes, int n_max, int N_max) {
  DenseFock f;
  f.modes = modes;
  std::vector<int> t(static_cast<std::size_t>(modes), 0);
  while (true) {
    int s = 0;
    for (int v : t) s += v;
    if (s <= N_max) {
      f.index[t] = static_cast<int>(f.states.size());
      f.states.push_back(t);
    }
    int k = 0;
    while (k < modes && ++t[static_cast<std::size_t>(k)] > n_max) t[static_cast<std::size_t>(k++)] = 0;
    if (k == modes) break;
  }
  return f;
}

inline Eigen::MatrixXd dense_annihilator(const DenseFock& f, int mode) {
  const int d = static_cast<int>(f.states.size());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(d, d);
  for (int j = 0; j < d; ++j) {
    auto s = f.states[static_cast<std::size_t>(j)];
    const int n = s[static_cast<std::size_t>(mode)];
    if (n == 0) continue;
    --s[static_cast<std::size_t>(mode)];
    a(f.index.at(s), j) = std::sqrt(static_cast<double>(n));
  }
  return a;
}

// Normal-ordered interaction (1/2 eta) sum vhat(u'-u) a*_{u'} a*_{v'} a_u a_v
// built as products of ladder matrices on a space with caps raised by 2, then
// compressed to the small caps. `momenta` are integer triples; vhat maps a
// momentum difference to its coefficient.
inline Eigen::MatrixXd dense_hamiltonian(const std::vector<Eigen::Vector3i>& momenta, int n_max, int N_max, double eta,
                                         const std::function<double(const Eigen::Vector3i&)>& vhat,
                                         const DenseFock& small) {
  const int M = static_cast<int>(momenta.size());
  const DenseFock big = dense_fock(M, n_max + 2, N_max + 2);
  std::vector<Eigen::MatrixXd> a;
  for (int k = 0; k < M; ++k) a.push_back(dense_annihilator(big, k));
  const int D = static_cast<int>(big.states.size());
  Eigen::MatrixXd H = Eigen::MatrixXd::Zero(D, D);
  const double four_pi2 = 4.0 * M_PI * M_PI;
  for (int k = 0; k < M; ++k) H += four_pi2 * momenta[static_cast<std::size_t>(k)].squaredNorm() * a[k].transpose() * a[k];
  for (int u = 0; u < M; ++u)
    for (int v = 0; v < M; ++v)
      for (int up = 0; up < M; ++up)
        for (int vp = 0; vp < M; ++vp) {
          if (momenta[u] + momenta[v] != momenta[up] + momenta[vp]) continue;
          const double c = vhat(momenta[up] - momenta[u]);
          if (c == 0.0) continue;
          H += c / (2.0 * eta) * a[up].transpose() * a[vp].transpose() * a[u] * a[v];
        }
  const int d = static_cast<int>(small.states.size());
  Eigen::MatrixXd out(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      out(i, j) = H(big.index.at(small.states[static_cast<std::size_t>(i)]), big.index.at(small.states[static_cast<std::size_t>(j)]));
  return out;
}

// <n|z> by the recursion c_{n} = c_{n-1} z / sqrt(n), c_0 = exp(-|z|^2/2).
inline std::vector<std::complex<double>> coherent_series(std::complex<double> z, int n_max) {
  std::vector<std::complex<double>> c(static_cast<std::size_t>(n_max) + 1);
  c[0] = std::exp(-0.5 * std::norm(z));
  for (int n = 1; n <= n_max; ++n) c[static_cast<std::size_t>(n)] = c[static_cast<std::size_t>(n) - 1] * z / std::sqrt(static_cast<double>(n));
  return c;
}

}  // namespace oracle
