#include "mfbose/fock/basis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <string>

#include "mfbose/errors.hpp"

namespace mfbose {

namespace {

constexpr std::uint64_t kFnvOffset = 1469598103934665603ULL;
constexpr std::uint64_t kFnvPrime = 1099511628211ULL;

void fnv_mix(std::uint64_t& h, std::int64_t v) {
  for (int b = 0; b < 8; ++b) {
    h ^= static_cast<std::uint64_t>((v >> (8 * b)) & 0xff);
    h *= kFnvPrime;
  }
}

// Appends all tuples of the given total with entries <= cap, first entry largest first.
void generate(int modes, int cap, int total, std::vector<int>& scratch, int k, std::vector<int>& out) {
  if (k == modes - 1) {
    if (total > cap) return;
    scratch[static_cast<std::size_t>(k)] = total;
    out.insert(out.end(), scratch.begin(), scratch.end());
    return;
  }
  const int remaining_capacity = (modes - k - 1) * cap;
  for (int v = std::min(cap, total); v >= 0 && total - v <= remaining_capacity; --v) {
    scratch[static_cast<std::size_t>(k)] = v;
    generate(modes, cap, total - v, scratch, k + 1, out);
  }
}

}  // namespace

Index FockBasis::count(Index mode_count, int n_max, int N_max) {
  if (mode_count < 0 || n_max < 0 || N_max < 0) throw InvalidArgument("basis caps must be non-negative");
  // ways[t] = number of tuples over the modes processed so far with total t.
  std::vector<double> ways(static_cast<std::size_t>(N_max) + 1, 0.0);
  ways[0] = 1.0;
  for (Index m = 0; m < mode_count; ++m) {
    std::vector<double> next(ways.size(), 0.0);
    for (int t = 0; t <= N_max; ++t)
      for (int v = 0; v <= n_max && t + v <= N_max; ++v) next[static_cast<std::size_t>(t + v)] += ways[static_cast<std::size_t>(t)];
    ways.swap(next);
  }
  double total = 0.0;
  for (double w : ways) total += w;
  if (total > static_cast<double>(std::numeric_limits<Index>::max() / 2)) return std::numeric_limits<Index>::max();
  return static_cast<Index>(total + 0.5);
}

FockBasis::FockBasis(std::vector<ModeIndex> modes, int n_max, int N_max, Index dim_cap)
    : modes_(std::move(modes)), n_max_(n_max), N_max_(N_max) {
  if (modes_.empty()) throw InvalidArgument("a Fock basis needs at least one mode");
  std::set<ModeIndex, ModeLess> distinct(modes_.begin(), modes_.end());
  if (distinct.size() != modes_.size()) throw InvalidArgument("duplicate mode in Fock basis");

  const Index expected = count(mode_count(), n_max, N_max);
  if (expected > dim_cap)
    throw DimensionTooLarge("Fock basis dimension " + std::to_string(expected) + " exceeds the cap " +
                            std::to_string(dim_cap));
  const double bits = static_cast<double>(mode_count()) * std::log2(static_cast<double>(n_max) + 1.0);
  if (bits > 63.0) throw DimensionTooLarge("occupation tuples do not fit the 64-bit state index");

  const int M = static_cast<int>(mode_count());
  std::vector<int> scratch(static_cast<std::size_t>(M), 0);
  occ_.reserve(static_cast<std::size_t>(expected * M));
  for (int total = 0; total <= N_max; ++total) generate(M, n_max, total, scratch, 0, occ_);
  dim_ = static_cast<Index>(occ_.size()) / M;

  total_.resize(static_cast<std::size_t>(dim_));
  index_.reserve(static_cast<std::size_t>(dim_));
  for (Index i = 0; i < dim_; ++i) {
    const int* row = &occ_[static_cast<std::size_t>(i * M)];
    int t = 0;
    for (int k = 0; k < M; ++k) t += row[k];
    total_[static_cast<std::size_t>(i)] = t;
    index_.emplace(encode(row), i);
  }

  fingerprint_ = kFnvOffset;
  fnv_mix(fingerprint_, n_max);
  fnv_mix(fingerprint_, N_max);
  for (const auto& p : modes_)
    for (int c = 0; c < 3; ++c) fnv_mix(fingerprint_, p(c));
}

FockBasis FockBasis::from_lattice(const LatticeSpec& spec, int n_max, int N_max, Index dim_cap) {
  return FockBasis(enumerate_modes(spec), n_max, N_max, dim_cap);
}

std::uint64_t FockBasis::encode(const int* occupation) const {
  std::uint64_t key = 0;
  for (Index k = 0; k < mode_count(); ++k) key = key * static_cast<std::uint64_t>(n_max_ + 1) + static_cast<std::uint64_t>(occupation[k]);
  return key;
}

std::vector<int> FockBasis::state(Index i) const {
  const auto first = occ_.begin() + static_cast<std::ptrdiff_t>(i * mode_count());
  return {first, first + static_cast<std::ptrdiff_t>(mode_count())};
}

std::optional<Index> FockBasis::find(const int* occupation) const {
  int t = 0;
  for (Index k = 0; k < mode_count(); ++k) {
    if (occupation[k] < 0 || occupation[k] > n_max_) return std::nullopt;
    t += occupation[k];
  }
  if (t > N_max_) return std::nullopt;
  const auto it = index_.find(encode(occupation));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::optional<Index> FockBasis::find(const std::vector<int>& occupation) const {
  if (static_cast<Index>(occupation.size()) != mode_count()) throw InvalidArgument("occupation tuple has the wrong length");
  return find(occupation.data());
}

std::optional<Index> FockBasis::try_mode_position(const ModeIndex& p) const {
  for (std::size_t k = 0; k < modes_.size(); ++k)
    if (modes_[k] == p) return static_cast<Index>(k);
  return std::nullopt;
}

Index FockBasis::mode_position(const ModeIndex& p) const {
  const auto k = try_mode_position(p);
  if (!k)
    throw UnknownMode("mode (" + std::to_string(p(0)) + "," + std::to_string(p(1)) + "," + std::to_string(p(2)) +
                      ") is not in the basis");
  return *k;
}

}  // namespace mfbose
