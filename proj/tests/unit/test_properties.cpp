// Randomized invariants over hand-rolled generators with fixed seeds.

#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "../support/oracles.hpp"
#include "dirac/dirac.hpp"

using dirac::AngularChannel;
using dirac::EnergyPoint;
using dirac::PhysicalScale;
using dirac::ProjectiveRatio;
using dirac::Threshold;

TEST(Property, LevinsonResidualVanishesForRandomPotentials) {
  oracle::Gen gen(20261018);
  for (int trial = 0; trial < 24; ++trial) {
    const auto p = gen.potential(3, 7.0);
    const int kappa = gen.kappa(3, true);
    const PhysicalScale scale(gen.uniform(0.5, 2.0));
    const auto a = dirac::analyze_levinson(p, AngularChannel(kappa), scale);
    EXPECT_TRUE(a.methods_agree()) << "trial " << trial;
    EXPECT_LT(a.report.residual, 1e-12) << "trial " << trial << " kappa " << kappa;
  }
}

TEST(Property, ThresholdLimitsLieOnLattice) {
  oracle::Gen gen(7);
  for (int trial = 0; trial < 30; ++trial) {
    const int kappa = gen.kappa(3, true);
    const double lambda = gen.uniform(-8.0, 8.0);
    const auto r = dirac::verify_levinson(dirac::square_well(lambda, 1.0), AngularChannel(kappa), PhysicalScale(1.0));
    const double unit = std::abs(kappa) == 1 ? dirac::kHalfPi : dirac::kPi;
    EXPECT_DOUBLE_EQ(std::remainder(r.delta_plus, unit), 0.0);
    EXPECT_DOUBLE_EQ(std::remainder(r.delta_minus, unit), 0.0);
    EXPECT_EQ(r.sin2_plus, std::abs(std::sin(r.delta_plus)) > 0.5 ? 1.0 : 0.0);
  }
}

TEST(Property, ChargeConjugationMirror) {
  // N_{-κ}(V) = N_κ(-V) and the thresholds exchange.
  oracle::Gen gen(11);
  const PhysicalScale scale(1.0);
  for (int trial = 0; trial < 12; ++trial) {
    const auto p = gen.potential(2, 6.0);
    const int k = gen.integer(1, 3);
    const auto neg = dirac::verify_levinson(p, AngularChannel(-k), scale);
    const auto pos = dirac::verify_levinson(dirac::reflect(p), AngularChannel(k), scale);
    EXPECT_EQ(neg.N_kappa, pos.N_kappa);
    EXPECT_EQ(neg.delta_plus, pos.delta_minus);
    EXPECT_EQ(neg.delta_minus, pos.delta_plus);
  }
}

TEST(Property, InteriorRatioIsScaleFree) {
  // Rescaling the starting ray leaves the boundary ratio unchanged.
  oracle::Gen gen(3);
  for (int trial = 0; trial < 20; ++trial) {
    const auto p = gen.potential(3, 5.0);
    const AngularChannel ch(gen.kappa(3, false));
    const EnergyPoint e(gen.uniform(-3.0, 3.0), PhysicalScale(1.0));
    const double r_start = 1e-3 * p.cutoff_radius();
    const dirac::Ray start{std::pow(r_start, ch.kappa() + 1), std::pow(r_start, ch.kappa())};
    const dirac::Ray scaled{start.f * 1e7, start.g * 1e7};
    const auto sa = dirac::propagate_radial(p, ch, e, r_start, start, 2048);
    const auto sb = dirac::propagate_radial(p, ch, e, r_start, scaled, 2048);
    const auto a = ProjectiveRatio::from_pair(sa.f.back(), sa.g.back());
    const auto b = ProjectiveRatio::from_pair(sb.f.back(), sb.g.back());
    EXPECT_LT(dirac::projective_distance(a, b), 1e-13);
  }
}

TEST(Property, JumpLedgerOnlyHalfUnitsForKappaOne) {
  oracle::Gen gen(17);
  for (int trial = 0; trial < 30; ++trial) {
    const int kappa = gen.kappa(3, true);
    const double lambda = gen.uniform(-9.0, 9.0);
    for (auto t : {Threshold::plus, Threshold::minus}) {
      const auto l = dirac::jump_ledger(lambda, AngularChannel(kappa), PhysicalScale(1.0), 1.0, t);
      if (std::abs(kappa) != 1) {
        EXPECT_EQ(l.half_pi_units % 2, 0);
      }
      EXPECT_DOUBLE_EQ(l.value, l.half_pi_units * dirac::kHalfPi);
    }
  }
}

TEST(Property, ProjectiveInversionIsInvolution) {
  oracle::Gen gen(23);
  for (int trial = 0; trial < 100; ++trial) {
    const auto a = ProjectiveRatio::from_pair(gen.uniform(-5, 5), gen.uniform(-5, 5));
    EXPECT_LT(dirac::projective_distance(a, a.inverted().inverted()), 1e-15);
  }
}

TEST(Property, SpectrumMatchesOracleForRandomWells) {
  oracle::Gen gen(29);
  for (int trial = 0; trial < 10; ++trial) {
    const int kappa = gen.integer(1, 3);
    const double lambda = gen.uniform(-9.0, 9.0);
    const double m = gen.uniform(0.5, 2.0);
    const double r0 = gen.uniform(0.5, 1.5);
    const auto got = dirac::find_bound_states(dirac::square_well(lambda, r0), AngularChannel(kappa), PhysicalScale(m));
    const auto want = oracle::square_well_bound_energies(lambda, m, r0, kappa);
    ASSERT_EQ(got.bound_energies.size(), want.size()) << trial;
    for (std::size_t i = 0; i < want.size(); ++i) EXPECT_NEAR(got.bound_energies[i], want[i], 1e-9 * m);
  }
}

TEST(Property, SweepRowsMatchDirectAnalysis) {
  oracle::Gen gen(31);
  const int kappa = gen.kappa(2, true);
  const auto sweep = dirac::lambda_sweep(AngularChannel(kappa), PhysicalScale(1.0), 1.0, -4.0, 4.0, 1.0);
  for (const auto& row : sweep.rows) {
    const auto r = dirac::verify_levinson(dirac::square_well(row.lambda, 1.0), AngularChannel(kappa), PhysicalScale(1.0));
    EXPECT_EQ(row.N, r.N_kappa);
    EXPECT_DOUBLE_EQ(row.delta_plus_half_pi * dirac::kHalfPi, r.delta_plus);
  }
}
