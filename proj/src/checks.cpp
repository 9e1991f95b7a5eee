#include "dps/checks.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>

#include "dps/greens.hpp"
#include "dps/grid.hpp"
#include "dps/hermite.hpp"
#include "dps/quadrature.hpp"
#include "dps/scattering.hpp"

namespace dps {
namespace {

using Rng = std::mt19937_64;

double uniform(Rng& rng, double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); }
int uniform_int(Rng& rng, int a, int b) { return std::uniform_int_distribution<int>(a, b)(rng); }

MomentumVec random_momentum(Rng& rng, double radius) {
  MomentumVec p;
  do {
    p = {uniform(rng, -radius, radius), uniform(rng, -radius, radius), uniform(rng, -radius, radius)};
  } while (p.norm() > radius);
  return p;
}

double orthonormality_deviation() {
  constexpr int n_max = 40;
  const auto& rule = quad::gauss_hermite(200);
  std::vector<std::vector<complex>> table;
  for (std::size_t i = 0; i < rule.size(); ++i) table.push_back(xi_sequence(n_max, rule.nodes[i]));
  double worst = 0.0;
  for (int n = 0; n <= n_max; ++n) {
    for (int m = 0; m <= n_max; ++m) {
      complex s{};
      for (std::size_t i = 0; i < rule.size(); ++i) {
        s += rule.scaled_weights[i] * table[i][n] * std::conj(table[i][m]);
      }
      worst = std::max(worst, std::abs(s - (n == m ? 1.0 : 0.0)));
    }
  }
  return worst;
}

double eigen_relation(Rng& rng) {
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const int n = uniform_int(rng, 0, 100);
    const double k = uniform(rng, -10.0, 10.0);
    worst = std::max(worst, std::abs(xi_delta_sharp(n, k) - k * xi(n, k)) / (1.0 + std::abs(k)));
  }
  return worst;
}

double recurrence_vs_direct() {
  double worst = 0.0;
  for (int n = 0; n <= 25; ++n) {
    const double norm = std::pow(pi, 0.25) * std::pow(2.0, 0.5 * n) * std::sqrt(std::tgamma(n + 1.0));
    complex phase{1.0, 0.0};
    for (int j = 0; j < n; ++j) phase *= I;
    for (double k = -6.0; k <= 6.0; k += 0.37) {
      const complex direct = phase * std::exp(-0.5 * k * k) * hermite_poly(n, k) / norm;
      const complex rec = xi(n, k);
      worst = std::max(worst, std::abs(rec - direct) / std::max(std::abs(direct), 1e-300));
    }
  }
  return worst;
}

double kg_residual(Rng& rng) {
  double worst = 0.0;
  for (int i = 0; i < 5; ++i) {
    const MomentumVec k = random_momentum(rng, 2.0);
    const double mu = uniform(rng, 0.1, 2.0);
    worst = std::max(worst, kg_mode_residual(k, mu, GridBox(6, 6, 6)));
  }
  return worst;
}

double random_orthonormality(Rng& rng, const GammaSet& g) {
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double m = uniform(rng, 0.2, 2.0);
    worst = std::max(worst, orthonormality_check(random_momentum(rng, 10.0 * m), m, g));
  }
  return worst;
}

double random_spin_sum(Rng& rng, const GammaSet& g) {
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double m = uniform(rng, 0.2, 2.0);
    const MomentumVec p = random_momentum(rng, 5.0);
    worst = std::max(worst, (spin_sum(p, m, g) - spin_sum_closed_form(p, m, gamma_set())).cwiseAbs().maxCoeff());
  }
  return worst;
}

double dirac_residual(Rng& rng, const GammaSet& g) {
  double worst = 0.0;
  for (int i = 0; i < 4; ++i) {
    const MomentumVec p = random_momentum(rng, 1.5);
    for (auto kind : {SpinorKind::particle, SpinorKind::antiparticle}) {
      for (int r = 1; r <= 2; ++r) worst = std::max(worst, dirac_mode_residual(kind, r, p, 1.0, GridBox(5, 5, 5), g));
    }
  }
  return worst;
}

// \int_x^inf w^{-3/2} e^{-w} dw with w = x e^s, composite Gauss-Legendre in s.
double gamma_by_quadrature(double x) {
  std::vector<double> breaks;
  const double top = std::log((x + 60.0) / x);
  for (int i = 0; i <= 200; ++i) breaks.push_back(top * i / 200.0);
  const auto rule = quad::composite_legendre(breaks, 16);
  double s = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const double w = x * std::exp(rule.nodes[i]);
    s += rule.weights[i] * std::exp(-w) / std::sqrt(w);
  }
  return s;
}

double incomplete_gamma_check() {
  double worst = 0.0;
  for (int i = 0; i <= 30; ++i) {
    const double x = 1e-6 * std::pow(25.0 / 1e-6, i / 30.0);
    const double ref = gamma_by_quadrature(x);
    worst = std::max(worst, std::abs(incomplete_gamma_neg_half(x) - ref) / ref);
  }
  return worst;
}

double coincidence_check() {
  double worst = std::abs(w_sharp(0, 0.0) - 2.0);
  for (double mu : {0.25, 0.5, 1.0, 2.0, 4.0}) {
    worst = std::max(worst, std::abs(w_sharp(0, mu) / yukawa_coincidence(mu) - 1.0));
  }
  return worst;
}

double coulomb_check() {
  double worst = 0.0;
  for (int n = 0; n <= 10; ++n) {
    worst = std::max(worst, std::abs(coulomb_quadrature(2 * n).value.real() / coulomb_even(n) - 1.0));
    worst = std::max(worst, std::abs(coulomb_quadrature(2 * n + 1).value));
  }
  return worst;
}

double parity_check(Rng& rng, int pairs) {
  double worst = 0.0;
  for (int i = 0; i < pairs; ++i) {
    GridIndex n, nh;
    bool violates = false;
    while (!violates) {
      for (std::size_t j = 0; j < 3; ++j) {
        n[j] = uniform_int(rng, 0, 6);
        nh[j] = uniform_int(rng, 0, 6);
        violates = violates || ((n[j] - nh[j]) % 2 != 0);
      }
    }
    worst = std::max(worst, std::abs(g_sharp(n, nh, uniform(rng, 0.25, 2.0)).value));
  }
  return worst;
}

// Largest increase of w_sharp(0, mu) between neighbours of a mu grid; <= 0 means decreasing.
double monotonicity_check() {
  double worst = -std::numeric_limits<double>::infinity();
  double prev = w_sharp(0, 0.1);
  for (int i = 1; i <= 39; ++i) {
    const double mu = 0.1 + 0.1 * i;
    const double cur = w_sharp(0, mu);
    worst = std::max(worst, cur - prev);
    prev = cur;
  }
  return worst;
}

double continuum_check() {
  double worst = 0.0;
  for (double r : {0.5, 1.0, 2.0}) {
    for (double mu : {0.25, 1.0}) {
      const double ref = continuum_yukawa(r, mu, 1.0);
      worst = std::max(worst, std::abs(continuum_yukawa_oracle(r, mu) / ref - 1.0));
    }
  }
  return worst;
}

double symmetry_check(Rng& rng) {
  double worst = 0.0;
  for (int i = 0; i < 10; ++i) {
    GridIndex n(uniform_int(rng, 0, 4), uniform_int(rng, 0, 4), uniform_int(rng, 0, 4));
    GridIndex nh(n[0] + 2 * uniform_int(rng, 0, 1), n[1], n[2] + 2 * uniform_int(rng, 0, 1));
    const double mu = uniform(rng, 0.5, 2.0);
    worst = std::max(worst, std::abs(g_sharp(n, nh, mu).value - std::conj(g_sharp(nh, n, mu).value)));
  }
  return worst;
}

double difference_box_check() {
  double worst = 0.0;
  for (double mu : {0.5, 1.0, 2.0}) {
    const GreensTable table(mu, 4);
    for (int a = 0; a < 27; ++a) {
      for (int b = 0; b < 27; ++b) {
        const GridIndex n(a / 9, (a / 3) % 3, a % 3), nh(b / 9, (b / 3) % 3, b % 3);
        worst = std::max(worst, difference_equation_residual(table, n, nh));
      }
    }
  }
  return worst;
}

double cross_method_check() {
  double worst = 0.0;
  for (double mu : {1.0, 2.0}) {
    for (int n1 : {0, 2, 4}) {
      const double a = g_sharp_axis(n1, mu).value.real();
      const double s = g_sharp({n1, 0, 0}, {0, 0, 0}, mu).value.real();
      const double t = g_sharp_tensor({n1, 0, 0}, {0, 0, 0}, mu).value.real();
      worst = std::max({worst, std::abs(a - s), std::abs(a - t)});
    }
  }
  return worst;
}

double moller_oracle_check(Rng& rng) {
  double worst = 0.0;
  MollerKinematics kin;
  for (int i = 0; i < 2; ++i) {
    if (i == 1) {
      kin.p1 = 0.1 * random_momentum(rng, 1.0);
      kin.p2 = 0.1 * random_momentum(rng, 1.0);
      kin.p1p = 0.1 * random_momentum(rng, 1.0);
      kin.p2p = 0.1 * random_momentum(rng, 1.0);
    }
    const complex a = moller_reduced_element(kin, {32}).value;
    const complex b = moller_vertex_first(kin, {32}, 160);
    worst = std::max(worst, std::abs(a - b) / std::abs(b));
  }
  return worst;
}

}  // namespace

GammaSet corrupted_gamma_set() {
  GammaSet g = gamma_set();
  g(1)(0, 3) = -g(1)(0, 3);
  return g;
}

std::vector<CheckResult> run_checks(CheckSuite suite, const CheckOptions& opts) {
  Rng rng(opts.seed);
  std::vector<CheckResult> out;
  // observed <= tolerance passes; a throwing check reports +inf.
  auto add = [&](std::string name, double tol, const std::function<double()>& f) {
    CheckResult r{std::move(name), tol, std::numeric_limits<double>::infinity(), false};
    try {
      r.observed = f();
    } catch (const std::exception&) {
    }
    r.pass = r.observed <= tol;
    out.push_back(std::move(r));
  };
  const GammaSet& g = opts.gammas;

  add("hermite.orthonormality", 1e-10, orthonormality_deviation);
  add("hermite.eigen_relation", 1e-12, [&] { return eigen_relation(rng); });
  add("hermite.recurrence_vs_direct", 1e-10, recurrence_vs_direct);
  add("grid.kg_mode_residual", 1e-12, [&] { return kg_residual(rng); });
  add("dirac.clifford", 0.0, [&] { return clifford_defect(g); });
  add("dirac.hermiticity", 0.0, [&] { return hermiticity_defect(g); });
  add("dirac.orthonormality", 1e-12, [&] { return random_orthonormality(rng, g); });
  add("dirac.spin_sum", 1e-12, [&] { return random_spin_sum(rng, g); });
  add("dirac.mode_residual", 1e-12, [&] { return dirac_residual(rng, g); });
  add("dirac.low_momentum_slope", 0.2, [] {
    return std::abs(low_momentum_error_slope({0.3, -0.5, 0.8}, 1.0) - 4.0);
  });
  add("greens.incomplete_gamma", 1e-10, incomplete_gamma_check);
  add("greens.coincidence", 1e-6, coincidence_check);
  add("greens.coulomb_family", 1e-6, coulomb_check);
  add("greens.parity_selection", 1e-10, [&] { return parity_check(rng, suite == CheckSuite::full ? 50 : 10); });
  add("greens.monotonicity", 0.0, monotonicity_check);
  add("greens.continuum_yukawa", 1e-3, continuum_check);
  add("greens.symmetry", 1e-8, [&] { return symmetry_check(rng); });
  if (suite == CheckSuite::full) {
    add("greens.difference_equation_box", 1e-6, difference_box_check);
    add("greens.cross_method", 1e-6, cross_method_check);
    add("scattering.moller_oracle", 1e-4, [&] { return moller_oracle_check(rng); });
  }
  return out;
}

}  // namespace dps
