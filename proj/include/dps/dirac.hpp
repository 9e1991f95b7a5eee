#pragma once

#include <array>

#include <Eigen/Dense>

#include "dps/grid.hpp"
#include "dps/types.hpp"

namespace dps {

using Bispinor = Eigen::Vector4cd;
using RowBispinor = Eigen::RowVector4cd;
using Matrix4 = Eigen::Matrix4cd;

/// gamma^1 .. gamma^4 in the representation with gamma^4 = diag(-i,-i,i,i).
struct GammaSet {
  std::array<Matrix4, 4> gamma;

  /// mu in 1..4.
  const Matrix4& operator()(int mu) const { return gamma[static_cast<std::size_t>(mu - 1)]; }
  Matrix4& operator()(int mu) { return gamma[static_cast<std::size_t>(mu - 1)]; }
};

enum class SpinorKind { particle, antiparticle };

const GammaSet& gamma_set();

/// Largest entry of |{g^mu, g^nu} - 2 eta^{mu nu} I| over all 16 pairs,
/// eta = diag(1,1,1,-1).
double clifford_defect(const GammaSet& g);

/// Largest entry of |g^a - g^a^dagger| (a = 1..3) and |g^4 + g^4^dagger|.
double hermiticity_defect(const GammaSet& g);

/// +sqrt(|p|^2 + m^2). Throws DomainError unless m > 0.
double energy(const MomentumVec& p, double m);

/// Plane-wave spinors normalized so that u~u = 1 and v~v = -1:
///
///   u_1 = N (1, 0, -iA p3, -iA(p1 + i p2))
///   u_2 = N (0, 1, -iA(p1 - i p2), iA p3)
///   v_1 = N (iA p3, iA(p1 + i p2), 1, 0)
///   v_2 = N (iA(p1 - i p2), -iA p3, 0, 1)
///
/// with A = 1/(m+E) and N = sqrt((m+E)/2m). r in {1,2}.
Bispinor spinor_u(int r, const MomentumVec& p, double m);
Bispinor spinor_v(int r, const MomentumVec& p, double m);

/// i s^dagger gamma^4.
RowBispinor dirac_adjoint(const Bispinor& s, const GammaSet& g = gamma_set());

/// max over r,s of |u~_r u_s - d_rs|, |v~_r v_s + d_rs|, |u~_r v_s|, |v~_r u_s|.
double orthonormality_check(const MomentumVec& p, double m, const GammaSet& g = gamma_set());

/// Low-momentum expansion of spinor_u through the terms of order |p|^3:
/// upper entry 1 + (1/2)(|p|/2m)^2, lower entries -i(p/2m)[1 - (1/2)(|p|/2m)^2].
/// The difference from spinor_u is O(|p|^4). Throws DomainError if |p| >= m.
Bispinor low_momentum_u(int r, const MomentumVec& p, double m);

/// Least-squares slope of log max_r |low_momentum_u - spinor_u| against log|p|
/// for |p|/m on 11 log-spaced points of [0.01, 0.1] along `direction`.
double low_momentum_error_slope(const MomentumVec& direction, double m);

/// (m/E) sum_r u_r u~_r.
Matrix4 spin_sum(const MomentumVec& p, double m, const GammaSet& g = gamma_set());

/// (-i g^j p_j + i g^4 E + m I) / 2E.
Matrix4 spin_sum_closed_form(const MomentumVec& p, double m, const GammaSet& g = gamma_set());

/// Max-norm residual of g^a Delta#_a psi + g^4 d_t psi + m psi on the plane
/// wave psi = zeta * prod_j xi_{n^j}(+-p_j) * e^{-+iEt}, sampled over `box`
/// at t = 0 and differenced with the grid operators.
///
/// Particles use zeta = u_r(p), xi(p) and e^{-iEt}; antiparticles use
/// zeta = v_r(p), conj(xi(p)) = xi(-p) and e^{+iEt}.
double dirac_mode_residual(SpinorKind kind, int r, const MomentumVec& p, double m, GridBox box,
                           const GammaSet& g = gamma_set());

/// A 4x4 matrix sample with the refinement difference.
struct MatrixValue {
  Matrix4 value = Matrix4::Zero();
  double err_estimate = std::numeric_limits<double>::infinity();
};

/// On-shell fermionic Green's function
///   i \int [(i g^j p_j - i g^4 E - m I)/2E] prod_j xi_{n^j}(p_j) conj(xi_{nhat^j}(p_j))
///     e^{-iE dt} d^3p
/// by tensor Gauss-Hermite quadrature. Throws NonConvergence when two node
/// counts disagree by more than 100 * cfg.tol.
MatrixValue s_plus_green(const GridIndex& n, const GridIndex& nhat, double dt, double m,
                         const QuadratureConfig& cfg = {});

/// \int (m/E) sum_r u_r u~_r prod_j xi_{n^j} conj(xi_{nhat^j}) e^{-iE dt} d^3p from
/// the spinors themselves, at a fixed Gauss-Hermite order. Equals i * s_plus_green.
Matrix4 spinor_anticommutator(const GridIndex& n, const GridIndex& nhat, double dt, double m,
                              int gh_nodes);

}  // namespace dps
