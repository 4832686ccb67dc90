#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "mfbose/errors.hpp"
#include "mfbose/lattice.hpp"
#include "mfbose/special.hpp"
#include "mfbose/selfconsistent.hpp"
#include "oracles/lattice_oracle.hpp"

using namespace mfbose;

TEST_CASE("enumerate_modes: small cutoffs") {
  auto only_zero = enumerate_modes({0.0, true});
  REQUIRE(only_zero.size() == 1);
  CHECK(only_zero[0] == ModeIndex::Zero());

  CHECK(enumerate_modes({0.0, false}).empty());

  auto unit = enumerate_modes({kTwoPi, false});
  CHECK(unit.size() == 6);
  for (const auto& n : unit) CHECK(norm2(n) == 1);

  CHECK(enumerate_modes({kTwoPi * std::sqrt(2.0), true}).size() == 19);
}

TEST_CASE("enumerate_modes: count, order and reflection symmetry match brute force") {
  for (int k2 : {0, 1, 2, 3, 5, 9, 14, 30}) {
    for (bool zero : {true, false}) {
      const LatticeSpec spec = LatticeSpec::from_max_norm2(k2, zero);
      const auto modes = enumerate_modes(spec);
      const auto brute = oracle::integer_triples(k2, zero);
      CHECK(modes.size() == brute.size());
      CHECK(std::is_sorted(modes.begin(), modes.end(), mode_less));
      std::set<ModeIndex, ModeLess> set(modes.begin(), modes.end());
      for (const auto& n : modes) CHECK(set.count(ModeIndex(-n)) == 1);
      CHECK(shells(spec).mode_count() == modes.size());
    }
  }
}

TEST_CASE("bose_sum: closed forms and brute force") {
  const auto zero_only = bose_sum(LatticeSpec{0.0, true}, 1.0, -std::log(2.0));
  CHECK(zero_only.value == doctest::Approx(1.0).epsilon(1e-15));

  // beta = 1, mu_tilde = -1: the terms beyond |n| = 1 are below e^{-40}.
  const double brute = oracle::cube_sum(8, true, [](double p2) { return 1.0 / std::expm1(p2 + 1.0); });
  const auto s = bose_sum(certified_cutoff(1.0), 1.0, -1.0);
  CHECK(std::abs(s.value - brute) <= 1e-12);

  const LatticeSpec spec = LatticeSpec::from_max_norm2(20);
  CHECK(bose_sum(spec, 0.05, -0.5, 1.0).value > bose_sum(spec, 0.05, -1.0, 1.0).value);
}

TEST_CASE("bose_sum: certified tail dominates the omitted modes") {
  for (double beta : {0.002, 0.01, 0.05}) {
    for (double mt : {-0.01, -1.0, -10.0}) {
      for (int k2 : {2, 6, 12}) {
        const auto small = bose_sum(LatticeSpec::from_max_norm2(k2), beta, mt, 1e300);
        const auto large = bose_sum(LatticeSpec::from_max_norm2(k2 + 400), beta, mt, 1e300);
        const double omitted = large.value - small.value;
        CHECK(small.tail_bound >= omitted * (1.0 - 1e-12));
        CHECK(omitted > 0.0);
      }
    }
  }
}

TEST_CASE("bose_sum: tail tolerance is enforced") {
  CHECK_THROWS_AS(bose_sum(LatticeSpec::from_max_norm2(1), 0.001, -1.0), TailNotConverged);
  CHECK_THROWS_AS(bose_sum(LatticeSpec::from_max_norm2(1), 1.0, 0.5), InvalidArgument);
}

TEST_CASE("bose_sum: invariant under axis permutations and reflections") {
  // Sum directly over the modes with a permuted / reflected index.
  const LatticeSpec spec = LatticeSpec::from_max_norm2(11);
  const double beta = 0.02, mt = -0.3;
  const auto modes = enumerate_modes(spec);
  const BoseOccupation occ(beta, mt);
  double plain = 0.0, permuted = 0.0;
  for (const auto& n : modes) {
    plain += occ.value_at(n);
    permuted += occ.value_at(ModeIndex(-n(2), n(0), -n(1)));
  }
  CHECK(plain == doctest::Approx(permuted).epsilon(1e-14));
  CHECK(bose_sum(spec, beta, mt, 1e300).value == doctest::Approx(plain).epsilon(1e-13));
}

TEST_CASE("BoseOccupation invariants") {
  const BoseOccupation occ(0.7, -0.4);
  double prev = occ.zero_mode();
  for (int k = 1; k < 20; ++k) {
    const double p2 = 4.0 * M_PI * M_PI * k;
    const double v = occ.value_at(p2);
    CHECK(v > 0.0);
    CHECK(v < prev);
    CHECK(v <= 1.0 / (0.7 * (p2 + 0.4)));
    prev = v;
  }
  CHECK(BoseOccupation(0.7, -0.3).value_at(1.0) > occ.value_at(1.0));
  CHECK_THROWS_AS(BoseOccupation(0.0, -1.0), InvalidArgument);
}

TEST_CASE("bose_integral") {
  CHECK(bose_integral(1.0 / (4.0 * M_PI)) == doctest::Approx(oracle::kZetaThreeHalves).epsilon(1e-12));
  CHECK(bose_integral(4.0 * 0.3) == doctest::Approx(bose_integral(0.3) / 8.0).epsilon(1e-14));
  // Inverting bose_integral(beta) = mu eta / vhat0 reproduces beta_c.
  const double mu = 1.3, eta = 1e4, vhat0 = 0.7;
  const double bc = beta_critical(mu, eta, vhat0);
  CHECK(bose_integral(bc) == doctest::Approx(mu * eta / vhat0).epsilon(1e-12));
}

TEST_CASE("Riemann sandwich: the excited sum stays below the continuum bound") {
  // 1/(e^x - 1) <= 1/x term by term, and sum_{p != 0} 1/(beta (p^2 - mu_tilde))
  // grows like the integral as beta -> 0; the normalized gap to the integral shrinks.
  double previous_gap = std::numeric_limits<double>::infinity();
  for (double beta : {1.0, 0.1, 0.01, 0.001, 1e-4}) {
    const double mt = -1e-3;
    const auto spec = certified_cutoff(beta, 1e-12, false);
    const double sum = bose_sum(spec, beta, mt).value;
    const double gap = std::abs(sum - bose_integral(beta)) / bose_integral(beta);
    CHECK(gap < previous_gap);
    previous_gap = gap;
    for (int k = 1; k < 50; ++k) {
      const double x = beta * (4.0 * M_PI * M_PI * k - mt);
      CHECK(1.0 / std::expm1(x) <= 1.0 / x);
    }
  }
}

TEST_CASE("zeta(3/2) by Richardson matches Euler-Maclaurin and the frozen value") {
  CHECK(std::abs(zeta_three_halves() - oracle::kZetaThreeHalves) <= 1e-12);
  CHECK(std::abs(oracle::zeta_euler_maclaurin(1.5) - oracle::kZetaThreeHalves) <= 1e-13);
  CHECK(std::abs(zeta_richardson(2.0) - M_PI * M_PI / 6.0) <= 1e-12);
}

TEST_CASE("shells_from_modes describes a finite toy mode set") {
  const std::vector<ModeIndex> toy{ModeIndex::Zero(), ModeIndex(1, 0, 0)};
  const ShellTable t = shells_from_modes(toy);
  CHECK(t.finite_mode_set);
  CHECK(t.include_zero);
  CHECK(t.mode_count() == 2);
  const auto s = bose_sum(t, 1e-3, -0.5);
  CHECK(s.tail_bound == 0.0);
  CHECK(s.value == doctest::Approx(1.0 / std::expm1(0.5e-3) + 1.0 / std::expm1(1e-3 * (4 * M_PI * M_PI + 0.5))));
}
