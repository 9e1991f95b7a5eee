#include "dps/scattering.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "dps/dirac.hpp"
#include "dps/errors.hpp"
#include "dps/greens.hpp"
#include "dps/hermite.hpp"
#include "dps/quadrature.hpp"

namespace dps {

void VertexTruncation::validate() const {
  if (n_max < 1) throw std::invalid_argument("n_max must be >= 1, got " + std::to_string(n_max));
}

VertexSum vertex_axis_sum(double p, double q, double k, int sign_q, int sign_k,
                          const VertexTruncation& trunc) {
  trunc.validate();
  if ((sign_q != 1 && sign_q != -1) || (sign_k != 1 && sign_k != -1)) {
    throw std::invalid_argument("vertex_axis_sum: signs must be +1 or -1");
  }
  const auto xp = xi_sequence(trunc.n_max, p);
  const auto xq = xi_sequence(trunc.n_max, q);
  const auto xk = xi_sequence(trunc.n_max, k);
  VertexSum s;
  for (int n = 0; n <= trunc.n_max; ++n) {
    const complex cq = sign_q > 0 ? xq[n] : std::conj(xq[n]);
    const complex ck = sign_k > 0 ? xk[n] : std::conj(xk[n]);
    const complex term = xp[n] * cq * ck;
    s.value += term;
    if (n == trunc.n_max) s.tail_report = std::abs(term);
  }
  return s;
}

double MollerKinematics::conservation_defect() const {
  return std::abs(energy(p1p, m) + energy(p2p, m) - energy(p1, m) - energy(p2, m));
}

bool MollerKinematics::low_momentum_valid() const {
  const double lim = m / 5.0;
  return p1.norm() < lim && p2.norm() < lim && p1p.norm() < lim && p2p.norm() < lim;
}

double MollerKinematics::prefactor() const {
  return m * m / std::sqrt(energy(p1p, m) * energy(p2p, m) * energy(p1, m) * energy(p2, m));
}

void MollerKinematics::validate() const {
  if (!(m > 0.0)) throw DomainError("Moller kinematics: m must be positive");
  if (!(mu >= 0.0) || !std::isfinite(mu)) throw DomainError("Moller kinematics: mu must be >= 0");
  for (int r : {r1, r2, r1p, r2p}) {
    if (r != 1 && r != 2) throw DomainError("Moller kinematics: spins must be 1 or 2");
  }
}

namespace {

bool spins_match(const MollerKinematics& kin) { return kin.r1 == kin.r1p && kin.r2 == kin.r2p; }

double coupling(const MollerKinematics& kin) { return kin.g * kin.g / (4.0 * pi) * kin.prefactor(); }

// Vertex coefficients a_j(a) = xi_a(p_j) conj(xi_a(p'_j)), a = 0..L.
std::array<std::vector<complex>, 3> leg_coefficients(const MomentumVec& p, const MomentumVec& pp,
                                                     int L) {
  std::array<std::vector<complex>, 3> c;
  for (std::size_t j = 0; j < 3; ++j) {
    const auto x = xi_sequence(L, p[j]);
    const auto y = xi_sequence(L, pp[j]);
    c[j].resize(static_cast<std::size_t>(L) + 1);
    for (int a = 0; a <= L; ++a) c[j][a] = x[a] * std::conj(y[a]);
  }
  return c;
}

struct ElementPair {
  complex full{};     // n, nhat <= L
  complex reduced{};  // n, nhat <= L - 2
};

ElementPair schwinger_element(const std::array<std::vector<complex>, 3>& A,
                              const std::array<std::vector<complex>, 3>& B, int L, double mu,
                              int per_panel, int gh_nodes) {
  const auto breaks = schwinger_breakpoints(mu);
  const auto t_rule = quad::composite_legendre(breaks, per_panel);
  const auto& rule = quad::gauss_hermite(gh_nodes);
  const std::size_t N = rule.size();
  const int Lr = L - 2;
  std::vector<complex> seq(static_cast<std::size_t>(L) + 1);
  ElementPair out;
  for (std::size_t it = 0; it < t_rule.size(); ++it) {
    const double t = t_rule.nodes[it];
    const double tw = 2.0 * t_rule.weights[it] * std::exp(-mu * mu * (1.0 / (t * t) - 1.0));
    std::array<complex, 3> s{}, sr{};
    for (std::size_t i = 0; i < N; ++i) {
      const double u = rule.nodes[i];
      xi_sequence(L, u * t, seq);
      const double w = rule.scaled_weights[i] * std::exp(-u * u * (1.0 - t * t));
      for (std::size_t j = 0; j < 3; ++j) {
        complex v1{}, v2{}, v1r{}, v2r{};
        for (int a = 0; a <= L; ++a) {
          v1 += A[j][a] * seq[a];
          v2 += B[j][a] * std::conj(seq[a]);
          if (a == Lr) {
            v1r = v1;
            v2r = v2;
          }
        }
        s[j] += w * v1 * v2;
        sr[j] += w * v1r * v2r;
      }
    }
    out.full += tw * s[0] * s[1] * s[2];
    out.reduced += tw * sr[0] * sr[1] * sr[2];
  }
  return out;
}

}  // namespace

MollerResult moller_reduced_element(const MollerKinematics& kin, const VertexTruncation& trunc,
                                    const QuadratureConfig& cfg) {
  kin.validate();
  trunc.validate();
  cfg.validate();
  MollerResult r;
  r.conservation_defect = kin.conservation_defect();
  r.low_momentum_valid = kin.low_momentum_valid();
  if (!spins_match(kin)) return r;

  const int L = std::max(trunc.n_max, 2);
  const auto A = leg_coefficients(kin.p1, kin.p1p, L);
  const auto B = leg_coefficients(kin.p2, kin.p2p, L);
  const int panels = static_cast<int>(schwinger_breakpoints(kin.mu).size()) - 1;
  const int per_panel = std::max(cfg.radial_nodes / panels, 3 * L + 8);
  const int gh = std::max(cfg.gh_nodes, L + 2);

  ElementPair e = schwinger_element(A, B, L, kin.mu, per_panel, gh);
  r.err_estimate = std::numeric_limits<double>::infinity();
  if (cfg.refine) {
    const ElementPair fine = schwinger_element(A, B, L, kin.mu, 2 * per_panel, 2 * gh);
    r.err_estimate = coupling(kin) * std::abs(fine.full - e.full);
    e = fine;
  }
  const double c = coupling(kin);
  r.value = c * e.full;
  r.truncation_diagnostic = c * std::abs(e.full - e.reduced);
  r.truncation_warning = r.truncation_diagnostic > cfg.tol;
  if (cfg.refine && r.err_estimate > 100.0 * cfg.tol * std::max(1.0, std::abs(r.value))) {
    throw NonConvergence("moller_reduced_element", r.err_estimate, 100.0 * cfg.tol);
  }
  return r;
}

complex moller_vertex_first(const MollerKinematics& kin, const VertexTruncation& trunc,
                            int gh_nodes) {
  kin.validate();
  trunc.validate();
  if (!(kin.mu > 0.0)) throw DomainError("moller_vertex_first needs mu > 0");
  if (!spins_match(kin)) return {};
  const auto& rule = quad::gauss_hermite(gh_nodes);
  const std::size_t N = rule.size();
  // f_j(k_i) = w~_i V1_j(k_i) V2_j(k_i)
  std::array<std::vector<complex>, 3> f;
  for (std::size_t j = 0; j < 3; ++j) {
    f[j].resize(N);
    for (std::size_t i = 0; i < N; ++i) {
      const double k = rule.nodes[i];
      const complex v1 = vertex_axis_sum(kin.p1[j], kin.p1p[j], k, -1, +1, trunc).value;
      const complex v2 = vertex_axis_sum(kin.p2[j], kin.p2p[j], k, -1, -1, trunc).value;
      f[j][i] = rule.scaled_weights[i] * v1 * v2;
    }
  }
  const double mu2 = kin.mu * kin.mu;
  complex sum{};
  for (std::size_t a = 0; a < N; ++a) {
    const double k1 = rule.nodes[a] * rule.nodes[a] + mu2;
    for (std::size_t b = 0; b < N; ++b) {
      const double k12 = k1 + rule.nodes[b] * rule.nodes[b];
      complex row{};
      for (std::size_t c = 0; c < N; ++c) row += f[2][c] / (k12 + rule.nodes[c] * rule.nodes[c]);
      sum += f[0][a] * f[1][b] * row;
    }
  }
  return coupling(kin) * sum;
}

complex continuum_moller_reduced(const MollerKinematics& kin) {
  kin.validate();
  if (!spins_match(kin)) return {};
  const MomentumVec q = kin.p1 - kin.p1p;
  return coupling(kin) / (q.norm_squared() + kin.mu * kin.mu);
}

}  // namespace dps
