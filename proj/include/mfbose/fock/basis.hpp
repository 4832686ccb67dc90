#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "mfbose/lattice.hpp"
#include "mfbose/types.hpp"

namespace mfbose {

inline constexpr Index kDefaultDimensionCap = 20000;

/// Occupation-number basis over a finite mode list, truncated by a per-mode
/// cap n_max and a total cap N_max. States are ordered by total particle
/// number, then by descending lexicographic order of the occupation tuple, so
/// for two modes and caps 2 the order is (0,0),(1,0),(0,1),(2,0),(1,1),(0,2).
class FockBasis {
public:
  FockBasis(std::vector<ModeIndex> modes, int n_max, int N_max, Index dim_cap = kDefaultDimensionCap);

  static FockBasis from_lattice(const LatticeSpec& spec, int n_max, int N_max,
                                Index dim_cap = kDefaultDimensionCap);

  /// Number of admissible tuples without building them.
  static Index count(Index mode_count, int n_max, int N_max);

  Index dim() const { return dim_; }
  Index mode_count() const { return static_cast<Index>(modes_.size()); }
  int n_max() const { return n_max_; }
  int N_max() const { return N_max_; }
  const std::vector<ModeIndex>& modes() const { return modes_; }

  /// Occupation of mode k in basis state i.
  int occupation(Index i, Index k) const { return occ_[static_cast<std::size_t>(i * mode_count() + k)]; }
  std::vector<int> state(Index i) const;
  int total(Index i) const { return total_[static_cast<std::size_t>(i)]; }

  /// Position of an occupation tuple, or nullopt if it is outside the caps.
  std::optional<Index> find(const std::vector<int>& occupation) const;
  std::optional<Index> find(const int* occupation) const;

  /// Position of p in the mode list; throws UnknownMode.
  Index mode_position(const ModeIndex& p) const;
  std::optional<Index> try_mode_position(const ModeIndex& p) const;
  std::optional<Index> zero_mode() const { return try_mode_position(ModeIndex::Zero()); }

  /// Hash of (modes, caps); operators remember it to refuse mixing bases.
  std::uint64_t fingerprint() const { return fingerprint_; }

private:
  std::uint64_t encode(const int* occupation) const;

  std::vector<ModeIndex> modes_;
  int n_max_;
  int N_max_;
  Index dim_ = 0;
  std::vector<int> occ_;
  std::vector<int> total_;
  std::unordered_map<std::uint64_t, Index> index_;
  std::uint64_t fingerprint_ = 0;
};

}  // namespace mfbose
