#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "dps/errors.hpp"
#include "dps/hermite.hpp"
#include "dps/quadrature.hpp"
#include "oracles.hpp"

using namespace dps;

TEST(Hermite, PolyMatchesBoost) {
  for (int n = 0; n <= 30; ++n) {
    for (double k : {-3.5, -1.0, 0.0, 0.3, 2.0, 4.25}) {
      const double want = boost::math::hermite(static_cast<unsigned>(n), k);
      EXPECT_NEAR(hermite_poly(n, k), want, 1e-13 * std::max(1.0, std::abs(want))) << n << " " << k;
    }
  }
}

TEST(Hermite, PolyRejectsLargeOrder) {
  EXPECT_THROW(hermite_poly(31, 1.0), OrderTooLarge);
  EXPECT_THROW(hermite_poly(-1, 1.0), DomainError);
}

TEST(Hermite, XiSpecExamples) {
  EXPECT_NEAR(std::abs(xi(0, 0.0) - complex(std::pow(pi, -0.25), 0.0)), 0.0, 1e-15);
  // i * sqrt(2) e^{-1/2} / pi^{1/4}
  const complex x1 = xi(1, 1.0);
  EXPECT_NEAR(x1.real(), 0.0, 1e-16);
  EXPECT_NEAR(x1.imag(), std::sqrt(2.0) * std::exp(-0.5) / std::pow(pi, 0.25), 1e-14);
  EXPECT_NEAR(x1.imag(), 0.6442883651, 1e-10);
}

TEST(Hermite, RecurrenceMatchesDefinition) {
  for (int n = 0; n <= 40; ++n) {
    for (double k : {-6.0, -2.5, -0.1, 0.0, 0.7, 1.9, 5.5}) {
      const complex want = oracle::xi(n, k);
      EXPECT_LE(std::abs(xi(n, k) - want), 1e-12 * std::max(1.0, std::abs(want))) << n << " " << k;
    }
  }
}

TEST(Hermite, SequenceAgreesWithSingleValues) {
  const auto seq = xi_sequence(50, 1.3);
  ASSERT_EQ(seq.size(), 51u);
  for (int n = 0; n <= 50; ++n) EXPECT_EQ(seq[static_cast<std::size_t>(n)], xi(n, 1.3));
}

TEST(Hermite, ParityIsExact) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> kd(-8.0, 8.0);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = static_cast<int>(rng() % 120);
    const double k = kd(rng);
    const complex sign = (n % 2) ? -1.0 : 1.0;
    EXPECT_EQ(xi(n, -k), sign * xi(n, k));
  }
}

TEST(Hermite, LargeArgumentsUnderflowQuietly) {
  const complex v = xi(10, 60.0);
  EXPECT_TRUE(std::isfinite(v.real()) && std::isfinite(v.imag()));
  EXPECT_LT(std::abs(v), 1e-300);
  // large order near the turning point stays O(1) or below
  EXPECT_LT(std::abs(xi(2000, std::sqrt(2.0 * 2000 + 1))), 1.0);
}

TEST(Hermite, EigenRelation) {
  for (int n = 0; n <= 60; ++n) {
    for (double k : {-3.0, -0.4, 0.0, 1.1, 4.0}) {
      EXPECT_LE(std::abs(xi_delta_sharp(n, k) - k * xi(n, k)), 1e-12) << n << " " << k;
    }
  }
}

TEST(Hermite, ProductFactorizes) {
  const GridIndex n(2, 5, 1);
  const MomentumVec k(0.4, -1.2, 2.0);
  EXPECT_LE(std::abs(xi_product(n, k) - xi(2, 0.4) * xi(5, -1.2) * xi(1, 2.0)), 1e-16);
}

TEST(Quadrature, GaussHermiteMoments) {
  // \int x^{2j} e^{-x^2} dx = Gamma(j + 1/2)
  const auto& rule = quad::gauss_hermite(40);
  for (int j = 0; j <= 20; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) s += rule.weights[i] * std::pow(rule.nodes[i], 2 * j);
    EXPECT_NEAR(s / std::tgamma(j + 0.5), 1.0, 1e-12) << j;
  }
}

TEST(Quadrature, ScaledWeights) {
  const auto& rule = quad::gauss_hermite(100);
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double x = rule.nodes[i];
    if (x * x < 600.0) {
      EXPECT_NEAR(rule.scaled_weights[i], rule.weights[i] * std::exp(x * x),
                  1e-12 * rule.scaled_weights[i]);
    }
  }
  EXPECT_THROW(quad::gauss_hermite(quad::max_hermite_order + 1), std::invalid_argument);
}

TEST(Quadrature, GaussLegendrePolynomialExactness) {
  const auto r = quad::gauss_legendre(12, -1.0, 3.0);
  double s = 0.0;
  for (std::size_t i = 0; i < r.nodes.size(); ++i) s += r.weights[i] * std::pow(r.nodes[i], 23);
  EXPECT_NEAR(s, (std::pow(3.0, 24) - 1.0) / 24.0, 1e-12 * std::pow(3.0, 24) / 24.0);
}

TEST(Quadrature, CompositeLegendre) {
  const std::vector<double> br{0.0, 0.1, 0.5, 2.0};
  const auto r = quad::composite_legendre(br, 10);
  EXPECT_EQ(r.nodes.size(), 30u);
  double s = 0.0;
  for (std::size_t i = 0; i < r.nodes.size(); ++i) s += r.weights[i] * std::exp(-r.nodes[i]);
  EXPECT_NEAR(s, 1.0 - std::exp(-2.0), 1e-15);
}

// Orthonormality with 200 Gauss-Hermite nodes: xi_n conj(xi_m) e^{k^2} is a
// polynomial of degree n + m, integrated exactly against e^{-k^2}.
TEST(Property, HermiteOrthonormality) {
  const auto& rule = quad::gauss_hermite(200);
  double worst = 0.0;
  for (int n = 0; n <= 40; ++n) {
    for (int m = 0; m <= 40; ++m) {
      complex s{};
      for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        s += rule.scaled_weights[i] * xi(n, rule.nodes[i]) * std::conj(xi(m, rule.nodes[i]));
      }
      worst = std::max(worst, std::abs(s - (n == m ? 1.0 : 0.0)));
    }
  }
  EXPECT_LE(worst, 1e-10);
}
