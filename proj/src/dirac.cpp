#include "dps/dirac.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "dps/errors.hpp"
#include "dps/hermite.hpp"
#include "dps/quadrature.hpp"

namespace dps {
namespace {

GammaSet build_gammas() {
  const complex o{0.0, 0.0}, one{1.0, 0.0}, i{0.0, 1.0};
  GammaSet g;
  g(1) << o, o, o, one,
          o, o, one, o,
          o, one, o, o,
          one, o, o, o;
  g(2) << o, o, o, -i,
          o, o, i, o,
          o, -i, o, o,
          i, o, o, o;
  g(3) << o, o, one, o,
          o, o, o, -one,
          one, o, o, o,
          o, -one, o, o;
  g(4) << -i, o, o, o,
          o, -i, o, o,
          o, o, i, o,
          o, o, o, i;
  return g;
}

void require_mass(double m) {
  if (!(m > 0.0)) throw DomainError("fermion mass must be positive");
}

void require_spin(int r) {
  if (r != 1 && r != 2) throw std::invalid_argument("spin label must be 1 or 2, got " + std::to_string(r));
}

double max_abs(const Matrix4& a) { return a.cwiseAbs().maxCoeff(); }

}  // namespace

const GammaSet& gamma_set() {
  static const GammaSet g = build_gammas();
  return g;
}

double clifford_defect(const GammaSet& g) {
  double worst = 0.0;
  for (int mu = 1; mu <= 4; ++mu) {
    for (int nu = 1; nu <= 4; ++nu) {
      const double eta = (mu != nu) ? 0.0 : (mu == 4 ? -1.0 : 1.0);
      const Matrix4 ac = g(mu) * g(nu) + g(nu) * g(mu) - 2.0 * eta * Matrix4::Identity();
      worst = std::max(worst, max_abs(ac));
    }
  }
  return worst;
}

double hermiticity_defect(const GammaSet& g) {
  double worst = 0.0;
  for (int a = 1; a <= 3; ++a) worst = std::max(worst, max_abs(g(a) - g(a).adjoint()));
  return std::max(worst, max_abs(g(4) + g(4).adjoint()));
}

double energy(const MomentumVec& p, double m) {
  require_mass(m);
  return std::sqrt(p.norm_squared() + m * m);
}

Bispinor spinor_u(int r, const MomentumVec& p, double m) {
  require_spin(r);
  const double E = energy(p, m);
  const double A = 1.0 / (m + E);
  const double N = std::sqrt((m + E) / (2.0 * m));
  const complex pp{p[0], p[1]}, pm{p[0], -p[1]};
  Bispinor u;
  if (r == 1) {
    u << 1.0, 0.0, -I * A * p[2], -I * A * pp;
  } else {
    u << 0.0, 1.0, -I * A * pm, I * A * p[2];
  }
  return N * u;
}

Bispinor spinor_v(int r, const MomentumVec& p, double m) {
  require_spin(r);
  const double E = energy(p, m);
  const double A = 1.0 / (m + E);
  const double N = std::sqrt((m + E) / (2.0 * m));
  const complex pp{p[0], p[1]}, pm{p[0], -p[1]};
  Bispinor v;
  if (r == 1) {
    v << I * A * p[2], I * A * pp, 1.0, 0.0;
  } else {
    v << I * A * pm, -I * A * p[2], 0.0, 1.0;
  }
  return N * v;
}

RowBispinor dirac_adjoint(const Bispinor& s, const GammaSet& g) {
  return I * (s.adjoint() * g(4));
}

double orthonormality_check(const MomentumVec& p, double m, const GammaSet& g) {
  double worst = 0.0;
  for (int r = 1; r <= 2; ++r) {
    const RowBispinor ur = dirac_adjoint(spinor_u(r, p, m), g);
    const RowBispinor vr = dirac_adjoint(spinor_v(r, p, m), g);
    for (int s = 1; s <= 2; ++s) {
      const double d = (r == s) ? 1.0 : 0.0;
      const Bispinor us = spinor_u(s, p, m);
      const Bispinor vs = spinor_v(s, p, m);
      worst = std::max({worst, std::abs(complex(ur * us) - d), std::abs(complex(vr * vs) + d),
                        std::abs(complex(ur * vs)), std::abs(complex(vr * us))});
    }
  }
  return worst;
}

Bispinor low_momentum_u(int r, const MomentumVec& p, double m) {
  require_spin(r);
  require_mass(m);
  const double q = p.norm();
  if (q >= m) throw DomainError("low_momentum_u needs |p| < m");
  const double eps = (q / (2.0 * m)) * (q / (2.0 * m));
  const double upper = 1.0 + 0.5 * eps;
  const double lower = (1.0 - 0.5 * eps) / (2.0 * m);
  const complex pp{p[0], p[1]}, pm{p[0], -p[1]};
  Bispinor u;
  if (r == 1) {
    u << upper, 0.0, -I * lower * p[2], -I * lower * pp;
  } else {
    u << 0.0, upper, -I * lower * pm, I * lower * p[2];
  }
  return u;
}

double low_momentum_error_slope(const MomentumVec& direction, double m) {
  const double dn = direction.norm();
  std::vector<double> lx, ly;
  for (int i = 0; i <= 10; ++i) {
    const double q = m * std::pow(10.0, -2.0 + 0.1 * i);
    const MomentumVec p = (q / dn) * direction;
    double err = 0.0;
    for (int r = 1; r <= 2; ++r) err = std::max(err, (low_momentum_u(r, p, m) - spinor_u(r, p, m)).norm());
    lx.push_back(std::log(q));
    ly.push_back(std::log(err));
  }
  const double n = static_cast<double>(lx.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sx += lx[i];
    sy += ly[i];
    sxx += lx[i] * lx[i];
    sxy += lx[i] * ly[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

Matrix4 spin_sum(const MomentumVec& p, double m, const GammaSet& g) {
  const double E = energy(p, m);
  Matrix4 s = Matrix4::Zero();
  for (int r = 1; r <= 2; ++r) {
    const Bispinor u = spinor_u(r, p, m);
    s += u * dirac_adjoint(u, g);
  }
  return (m / E) * s;
}

Matrix4 spin_sum_closed_form(const MomentumVec& p, double m, const GammaSet& g) {
  const double E = energy(p, m);
  Matrix4 s = m * Matrix4::Identity() + I * E * g(4);
  for (int j = 0; j < 3; ++j) s -= I * p[j] * g(j + 1);
  return s / (2.0 * E);
}

double dirac_mode_residual(SpinorKind kind, int r, const MomentumVec& p, double m, GridBox box,
                           const GammaSet& g) {
  const bool particle = kind == SpinorKind::particle;
  const Bispinor zeta = particle ? spinor_u(r, p, m) : spinor_v(r, p, m);
  const MomentumVec k = particle ? p : -1.0 * p;
  const double E = energy(p, m);
  const complex dt_factor = particle ? -I * E : I * E;

  std::array<GridFunction, 4> psi{GridFunction(box), GridFunction(box), GridFunction(box),
                                  GridFunction(box)};
  const auto mode = GridFunction::sample(box, [&](const GridIndex& n) { return xi_product(n, k); });
  for (int c = 0; c < 4; ++c) {
    psi[c].for_each_index([&](const GridIndex& n) { psi[c](n) = zeta[c] * mode(n); });
  }
  // d[a][c] = Delta#_a psi_c
  std::array<std::array<GridFunction, 4>, 3> d{
      {{delta_sharp(psi[0], Axis::x1), delta_sharp(psi[1], Axis::x1),
        delta_sharp(psi[2], Axis::x1), delta_sharp(psi[3], Axis::x1)},
       {delta_sharp(psi[0], Axis::x2), delta_sharp(psi[1], Axis::x2),
        delta_sharp(psi[2], Axis::x2), delta_sharp(psi[3], Axis::x2)},
       {delta_sharp(psi[0], Axis::x3), delta_sharp(psi[1], Axis::x3),
        delta_sharp(psi[2], Axis::x3), delta_sharp(psi[3], Axis::x3)}}};

  const GridBox interior(box.extents[0] - 1, box.extents[1] - 1, box.extents[2] - 1);
  double worst = 0.0;
  GridFunction(interior).for_each_index([&](const GridIndex& n) {
    Bispinor v, res;
    for (int c = 0; c < 4; ++c) v[c] = psi[c](n);
    res = (m * Matrix4::Identity() + dt_factor * g(4)) * v;
    for (int a = 0; a < 3; ++a) {
      Bispinor da;
      for (int c = 0; c < 4; ++c) da[c] = d[a][c](n);
      res += g(a + 1) * da;
    }
    worst = std::max(worst, res.cwiseAbs().maxCoeff());
  });
  return worst;
}

namespace {

// Per-axis tables over the Gauss-Hermite nodes: w~_i xi_n(x_i) conj(xi_nhat(x_i)).
std::array<std::vector<complex>, 3> axis_weights(const GridIndex& n, const GridIndex& nhat,
                                                 const quad::HermiteRule& rule) {
  std::array<std::vector<complex>, 3> w;
  for (std::size_t j = 0; j < 3; ++j) {
    const int top = std::max(n[j], nhat[j]);
    w[j].resize(rule.size());
    std::vector<complex> seq(static_cast<std::size_t>(top) + 1);
    for (std::size_t i = 0; i < rule.size(); ++i) {
      xi_sequence(top, rule.nodes[i], seq);
      w[j][i] = rule.scaled_weights[i] * seq[n[j]] * std::conj(seq[nhat[j]]);
    }
  }
  return w;
}

int gh_order(const GridIndex& n, const GridIndex& nhat, int base) {
  int deg = 0;
  for (std::size_t j = 0; j < 3; ++j) deg = std::max(deg, n[j] + nhat[j]);
  return std::max(base, deg / 2 + 2);
}

Matrix4 s_plus_at(const GridIndex& n, const GridIndex& nhat, double dt, double m, int nodes) {
  const auto& rule = quad::gauss_hermite(nodes);
  const auto w = axis_weights(n, nhat, rule);
  complex s0{}, s4{};
  std::array<complex, 3> sj{};
  const std::size_t N = rule.size();
  for (std::size_t a = 0; a < N; ++a) {
    const double p1 = rule.nodes[a];
    for (std::size_t b = 0; b < N; ++b) {
      const double p2 = rule.nodes[b];
      const complex wab = w[0][a] * w[1][b];
      complex r0{}, r4{}, r1{}, r2{}, r3{};
      for (std::size_t c = 0; c < N; ++c) {
        const double p3 = rule.nodes[c];
        const double E = std::sqrt(p1 * p1 + p2 * p2 + p3 * p3 + m * m);
        const complex f = w[2][c] * std::exp(-I * (E * dt)) / (2.0 * E);
        r0 += f;
        r4 += f * E;
        r3 += f * p3;
      }
      s0 += wab * r0;
      s4 += wab * r4;
      sj[0] += wab * p1 * r0;
      sj[1] += wab * p2 * r0;
      sj[2] += wab * r3;
    }
  }
  const auto& g = gamma_set();
  Matrix4 bracket = -m * s0 * Matrix4::Identity() - I * s4 * g(4);
  for (int j = 0; j < 3; ++j) bracket += I * sj[j] * g(j + 1);
  return I * bracket;
}

}  // namespace

MatrixValue s_plus_green(const GridIndex& n, const GridIndex& nhat, double dt, double m,
                         const QuadratureConfig& cfg) {
  require_mass(m);
  cfg.validate();
  if (!n.nonnegative() || !nhat.nonnegative()) throw DomainError("grid indices must be in N^3");
  const int nodes = gh_order(n, nhat, cfg.gh_nodes);
  MatrixValue out;
  out.value = s_plus_at(n, nhat, dt, m, nodes);
  if (cfg.refine) {
    const Matrix4 fine = s_plus_at(n, nhat, dt, m, 2 * nodes);
    out.err_estimate = max_abs(fine - out.value);
    if (out.err_estimate > 100.0 * cfg.tol) {
      throw NonConvergence("s_plus_green", out.err_estimate, 100.0 * cfg.tol);
    }
    out.value = fine;
  }
  return out;
}

Matrix4 spinor_anticommutator(const GridIndex& n, const GridIndex& nhat, double dt, double m,
                              int gh_nodes) {
  const auto& rule = quad::gauss_hermite(gh_order(n, nhat, gh_nodes));
  const auto w = axis_weights(n, nhat, rule);
  Matrix4 acc = Matrix4::Zero();
  const std::size_t N = rule.size();
  for (std::size_t a = 0; a < N; ++a) {
    for (std::size_t b = 0; b < N; ++b) {
      for (std::size_t c = 0; c < N; ++c) {
        const MomentumVec p(rule.nodes[a], rule.nodes[b], rule.nodes[c]);
        const double E = energy(p, m);
        acc += (w[0][a] * w[1][b] * w[2][c] * std::exp(-I * (E * dt))) * spin_sum(p, m);
      }
    }
  }
  return acc;
}

}  // namespace dps
