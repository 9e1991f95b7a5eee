#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "dps/dirac.hpp"
#include "dps/errors.hpp"
#include "oracles.hpp"

using namespace dps;

namespace {

MomentumVec random_momentum(std::mt19937_64& rng, double radius) {
  std::uniform_real_distribution<double> d(-radius, radius);
  return {d(rng), d(rng), d(rng)};
}

double max_abs(const Matrix4& a) { return a.cwiseAbs().maxCoeff(); }

}  // namespace

TEST(Dirac, GammaMatricesByHand) {
  for (int mu = 1; mu <= 4; ++mu) EXPECT_EQ(max_abs(gamma_set()(mu) - oracle::gamma(mu)), 0.0) << mu;
  EXPECT_EQ(clifford_defect(gamma_set()), 0.0);
  EXPECT_EQ(hermiticity_defect(gamma_set()), 0.0);
}

TEST(Dirac, EnergyAndMassDomain) {
  EXPECT_DOUBLE_EQ(energy(MomentumVec(3.0, 0.0, 4.0), 12.0), 13.0);
  EXPECT_THROW(energy(MomentumVec(), 0.0), DomainError);
  EXPECT_THROW(spinor_u(3, MomentumVec(), 1.0), std::invalid_argument);
}

TEST(Dirac, RestSpinors) {
  const Bispinor u1 = spinor_u(1, MomentumVec(), 1.0);
  const Bispinor v2 = spinor_v(2, MomentumVec(), 1.0);
  EXPECT_EQ(u1, Bispinor(1, 0, 0, 0));
  EXPECT_EQ(v2, Bispinor(0, 0, 0, 1));
}

// (i gamma.p - i E gamma^4 + m) u = 0 and (-i gamma.p + i E gamma^4 + m) v = 0,
// with the hand-written matrices.
TEST(Dirac, MomentumSpaceEquation) {
  std::mt19937_64 rng(11);
  const complex i(0, 1);
  for (int t = 0; t < 50; ++t) {
    const MomentumVec p = random_momentum(rng, 2.0);
    const double m = 0.3 + (rng() % 100) / 50.0;
    const double E = std::sqrt(p.norm_squared() + m * m);
    Matrix4 slash = -i * E * oracle::gamma(4);
    for (int j = 0; j < 3; ++j) slash += i * p[j] * oracle::gamma(j + 1);
    for (int r = 1; r <= 2; ++r) {
      EXPECT_LE(((slash + m * Matrix4::Identity()) * spinor_u(r, p, m)).norm(), 1e-13);
      EXPECT_LE((((-slash) + m * Matrix4::Identity()) * spinor_v(r, p, m)).norm(), 1e-13);
    }
  }
}

TEST(Property, OrthonormalityAndSpinSum) {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 100; ++t) {
    const MomentumVec p = random_momentum(rng, 3.0);
    const double m = 0.2 + (rng() % 100) / 40.0;
    EXPECT_LE(orthonormality_check(p, m), 1e-12);
    EXPECT_LE(max_abs(spin_sum(p, m) - spin_sum_closed_form(p, m)), 1e-12);
  }
}

TEST(Property, AdjointUsesGammaFour) {
  const Bispinor s(complex(1, 2), complex(0, -1), complex(3, 0), complex(0.5, 0.5));
  const RowBispinor want = complex(0, 1) * s.adjoint() * oracle::gamma(4);
  EXPECT_LE((dirac_adjoint(s) - want).norm(), 1e-15);
}

TEST(Property, DiracModes) {
  std::mt19937_64 rng(13);
  for (int t = 0; t < 10; ++t) {
    const MomentumVec p = random_momentum(rng, 1.5);
    for (auto kind : {SpinorKind::particle, SpinorKind::antiparticle}) {
      for (int r = 1; r <= 2; ++r) EXPECT_LE(dirac_mode_residual(kind, r, p, 0.8, GridBox(5, 5, 5)), 1e-12);
    }
  }
}

TEST(Dirac, CorruptedGammasAreDetected) {
  GammaSet g = gamma_set();
  g(1)(0, 3) = -g(1)(0, 3);
  EXPECT_GT(clifford_defect(g), 0.5);
  EXPECT_GT(orthonormality_check(MomentumVec(0.3, 0.1, -0.2), 1.0, g) +
                max_abs(spin_sum(MomentumVec(0.3, 0.1, -0.2), 1.0, g) -
                        spin_sum_closed_form(MomentumVec(0.3, 0.1, -0.2), 1.0, g)),
            1e-3);
}

TEST(Dirac, LowMomentumExpansion) {
  const MomentumVec p(0.01, -0.02, 0.015);
  // remainder is O(|p|^4), |p|^4 ~ 5e-7 here
  for (int r = 1; r <= 2; ++r) EXPECT_LE((low_momentum_u(r, p, 1.0) - spinor_u(r, p, 1.0)).norm(), 1e-7);
  for (const MomentumVec dir : {MomentumVec(1, 0, 0), MomentumVec(0.3, -0.5, 0.8)}) {
    const double s = low_momentum_error_slope(dir, 1.3);
    EXPECT_GE(s, 3.8);
    EXPECT_LE(s, 4.2);
  }
  EXPECT_THROW(low_momentum_u(1, MomentumVec(2, 0, 0), 1.0), DomainError);
}

// s_plus_green times i equals the spinor anticommutator integral built from u u~.
TEST(Dirac, PropagatorAgainstSpinorIntegral) {
  const GridIndex n(1, 0, 2), nh(1, 2, 0);
  const auto s = s_plus_green(n, nh, 0.3, 1.0);
  const Matrix4 direct = spinor_anticommutator(n, nh, 0.3, 1.0, 120);
  EXPECT_LE(max_abs(complex(0, 1) * s.value - direct), 1e-10);
  EXPECT_LE(s.err_estimate, 1e-6);
}
