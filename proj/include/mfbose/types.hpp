#pragma once

#include <Eigen/Core>
#include <algorithm>
#include <array>
#include <complex>
#include <cstdint>

namespace mfbose {

using Index = Eigen::Index;
using Complex = std::complex<double>;

/// Integer label n of a lattice momentum p = 2*pi*n.
using ModeIndex = Eigen::Vector3i;

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

inline int norm2(const ModeIndex& n) { return n.squaredNorm(); }

/// |p|^2 for p = 2*pi*n.
inline double kinetic_energy(const ModeIndex& n) { return kTwoPi * kTwoPi * norm2(n); }

inline Eigen::Vector3d momentum(const ModeIndex& n) { return kTwoPi * n.cast<double>(); }

/// Total order used for modes everywhere: |n|^2 first, then lexicographic on (n_x, n_y, n_z).
inline bool mode_less(const ModeIndex& a, const ModeIndex& b) {
  const int na = norm2(a);
  const int nb = norm2(b);
  if (na != nb) return na < nb;
  return std::lexicographical_compare(a.data(), a.data() + 3, b.data(), b.data() + 3);
}

struct ModeLess {
  bool operator()(const ModeIndex& a, const ModeIndex& b) const { return mode_less(a, b); }
};

}  // namespace mfbose
