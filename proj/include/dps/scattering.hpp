#pragma once

#include <array>

#include "dps/types.hpp"

namespace dps {

/// Per-axis cutoff of the vertex Hermite sums.
struct VertexTruncation {
  int n_max = 64;

  /// Throws std::invalid_argument unless n_max >= 1.
  void validate() const;
};

/// A truncated single-axis vertex sum and the magnitude of its last term.
struct VertexSum {
  complex value{};
  double tail_report = 0.0;
};

/// sum_{n=0}^{n_max} xi_n(p) c(xi_n(q), sign_q) c(xi_n(k), sign_k), where
/// c(z, +1) = z and c(z, -1) = conj(z). The full series is a distribution and
/// need not converge pointwise; `tail_report` is |last term|.
VertexSum vertex_axis_sum(double p, double q, double k, int sign_q, int sign_k,
                          const VertexTruncation& trunc);

/// External legs and couplings of the one-boson-exchange element.
/// Fermion 1 goes p1 -> p1p, fermion 2 goes p2 -> p2p.
struct MollerKinematics {
  MomentumVec p1, p2, p1p, p2p;
  double m = 1.0;
  double mu = 1.0;
  double g = 1.0;
  int r1 = 1, r2 = 1, r1p = 1, r2p = 1;

  /// |E(p1p) + E(p2p) - E(p1) - E(p2)|.
  double conservation_defect() const;
  /// True when every external |p| < m/5.
  bool low_momentum_valid() const;
  /// m^2 / sqrt(E1' E2' E1 E2).
  double prefactor() const;
  /// Throws DomainError unless m > 0, mu >= 0 and every spin is 1 or 2.
  void validate() const;
};

struct MollerResult {
  complex value{};
  /// |E1' + E2' - E1 - E2|; the energy delta itself is factored out.
  double conservation_defect = 0.0;
  /// |element(n_max) - element(n_max - 2)|: the size of the outermost shells kept.
  double truncation_diagnostic = 0.0;
  /// Refinement difference of the k integral.
  double err_estimate = 0.0;
  /// truncation_diagnostic > cfg.tol.
  bool truncation_warning = false;
  bool low_momentum_valid = true;
};

/// (g^2/4pi) [m^2/sqrt(E1'E2'E1E2)] sum_{n, nhat <= n_max} A_n G#(n, nhat; mu) B_nhat with
///   A_n = prod_j xi_{n^j}(p1_j) conj(xi_{n^j}(p1'_j)),
///   B_n = prod_j xi_{n^j}(p2_j) conj(xi_{n^j}(p2'_j)),
/// and zero when r1 != r1' or r2 != r2'.
///
/// The G# kernel is taken in its Schwinger form, which factorizes the double
/// sum per axis: S_j(t) = sum_i w_i e^{-u_i^2(1-t^2)} [sum_a a_j(a) xi_a(u_i t)]
/// [sum_b b_j(b) conj(xi_b(u_i t))], so the cost is linear in n_max.
/// mu = 0 is allowed here. Throws NonConvergence like g_sharp.
MollerResult moller_reduced_element(const MollerKinematics& kin, const VertexTruncation& trunc,
                                    const QuadratureConfig& cfg = {});

/// The same truncated element with the order of operations swapped: the vertex
/// sums are formed first at every k node and the k integral of
/// prod_j V1_j(k_j) V2_j(k_j) / (k.k + mu^2) is done by tensor Gauss-Hermite
/// with `gh_nodes` per axis. Needs mu > 0.
complex moller_vertex_first(const MollerKinematics& kin, const VertexTruncation& trunc,
                            int gh_nodes);

/// (g^2/4pi) [m^2/sqrt(E1'E2'E1E2)] / (|p1 - p1'|^2 + mu^2), zero for mismatched spins.
complex continuum_moller_reduced(const MollerKinematics& kin);

}  // namespace dps
