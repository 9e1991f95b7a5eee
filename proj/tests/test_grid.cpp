#include <gtest/gtest.h>

#include <cmath>

#include "dps/errors.hpp"
#include "dps/grid.hpp"
#include "dps/hermite.hpp"

using namespace dps;

namespace {

GridFunction linear_in(GridBox box, Axis a) {
  return GridFunction::sample(box, [a](const GridIndex& n) { return complex(3.0 * n[a] + 1.0, -n[a]); });
}

}  // namespace

TEST(Grid, ForwardAndBackwardDifferencesOfLinear) {
  const GridBox box(4, 3, 5);
  const auto f = linear_in(box, Axis::x3);
  const auto fwd = delta_fwd(f, Axis::x3);
  EXPECT_EQ(fwd.box(), GridBox(4, 3, 4));
  fwd.for_each_index([&](const GridIndex& n) { EXPECT_EQ(fwd(n), complex(3.0, -1.0)); });

  const auto bwd = delta_bwd(f, Axis::x3);
  EXPECT_EQ(bwd.box(), GridBox(4, 3, 4));
  EXPECT_EQ(bwd.origin(), GridIndex(0, 0, 1));
  bwd.for_each_index([&](const GridIndex& n) { EXPECT_EQ(bwd(n), complex(3.0, -1.0)); });
  EXPECT_FALSE(bwd.contains(GridIndex(0, 0, 0)));
  EXPECT_THROW(bwd.at(GridIndex(0, 0, 0)), std::out_of_range);
}

TEST(Grid, SharpStencilByHand) {
  const GridBox box(5, 2, 2);
  auto f = GridFunction::sample(box, [](const GridIndex& n) { return complex(n[0] * n[0] + 0.5, n[1]); });
  const auto d = delta_sharp(f, Axis::x1);
  // keeps n1 = 0, loses the top layer
  EXPECT_EQ(d.origin(), GridIndex(0, 0, 0));
  EXPECT_EQ(d.box(), GridBox(4, 2, 2));
  d.for_each_index([&](const GridIndex& n) {
    const int j = n[0];
    complex want = std::sqrt(j + 1.0) * f(n.shifted(Axis::x1, 1));
    if (j > 0) want -= std::sqrt(static_cast<double>(j)) * f(n.shifted(Axis::x1, -1));
    want /= std::sqrt(2.0);
    EXPECT_LE(std::abs(d(n) - want), 4e-15 * std::max(1.0, std::abs(want)));
  });

  const auto c = delta_circle(f, Axis::x1);
  c.for_each_index([&](const GridIndex& n) {
    const int j = n[0];
    complex want = std::sqrt(j + 1.0) * f(n.shifted(Axis::x1, 1));
    if (j > 0) want += std::sqrt(static_cast<double>(j)) * f(n.shifted(Axis::x1, -1));
    want /= std::sqrt(2.0);
    EXPECT_LE(std::abs(c(n) - want), 4e-15 * std::max(1.0, std::abs(want)));
  });
}

TEST(Grid, SharpOnShiftedOriginDropsBottom) {
  const auto f = linear_in(GridBox(4, 2, 2), Axis::x1);
  const auto once = delta_bwd(f, Axis::x1);  // origin n1 = 1
  const auto d = delta_sharp(once, Axis::x1);
  EXPECT_EQ(d.origin(), GridIndex(2, 0, 0));
  EXPECT_EQ(d.box(), GridBox(1, 2, 2));
}

TEST(Grid, TooSmallBoxThrows) {
  const auto f = linear_in(GridBox(1, 3, 3), Axis::x2);
  EXPECT_THROW(delta_fwd(f, Axis::x1), BoxTooSmall);
  EXPECT_THROW(laplacian_sharp(linear_in(GridBox(2, 3, 3), Axis::x2)), BoxTooSmall);
}

// Delta# xi_n(k) = i k xi_n(k) on every index where the stencil is defined.
TEST(Property, SharpEigenfunction) {
  for (double k : {-2.0, -0.3, 0.0, 0.8, 3.1}) {
    const GridBox box(12, 2, 2);
    const MomentumVec kv(k, 0.4, -0.2);
    const auto f = GridFunction::sample(box, [&](const GridIndex& n) { return xi_product(n, kv); });
    const auto d = delta_sharp(f, Axis::x1);
    d.for_each_index([&](const GridIndex& n) {
      EXPECT_LE(std::abs(d(n) - complex(0.0, k) * f(n)), 1e-13) << k;
    });
  }
}

// The composed laplacian equals the 7-point stencil written per axis.
TEST(Property, LaplacianMatchesComposition) {
  const GridBox box(6, 5, 7);
  const auto f = GridFunction::sample(box, [](const GridIndex& n) {
    return complex(std::sin(0.3 * n[0] + n[1]) + 0.1 * n[2] * n[2], std::cos(n[0] * n[2] * 0.2));
  });
  const auto lap = laplacian_sharp(f);
  lap.for_each_index([&](const GridIndex& n) {
    complex want{};
    for (Axis a : {Axis::x1, Axis::x2, Axis::x3}) {
      const double j = n[a];
      complex t = std::sqrt((j + 1.0) * (j + 2.0)) * f(n.shifted(a, 2)) - (2.0 * j + 1.0) * f(n);
      if (j >= 2) t += std::sqrt(j * (j - 1.0)) * f(n.shifted(a, -2));
      want += 0.5 * t;
    }
    EXPECT_LE(std::abs(lap(n) - want), 1e-13);
  });
}

TEST(Property, KleinGordonModes) {
  for (double mu : {0.1, 1.0, 2.5}) {
    EXPECT_LE(kg_mode_residual(MomentumVec(0.3, -1.0, 0.7), mu, GridBox(6, 6, 6)), 1e-12);
  }
  // off-shell frequency leaves a visible residual
  EXPECT_GT(kg_mode_residual(MomentumVec(0.3, -1.0, 0.7), 1.0, GridBox(6, 6, 6), 0.5), 1e-3);
  EXPECT_THROW(kg_mode_residual(MomentumVec(), 0.0, GridBox(4, 4, 4)), DomainError);
}
