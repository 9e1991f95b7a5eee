#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <tuple>
#include <utility>
#include <vector>

#include "dps/quadrature.hpp"
#include "dps/types.hpp"

namespace dps {

/// Discrete Yukawa Green's function
///   G#(n, nhat; mu) = \int d^3k prod_j xi_{n^j}(k_j) conj(xi_{nhat^j}(k_j)) / (k.k + mu^2).
///
/// Evaluated through the Schwinger form
///   G# = 2 \int_0^1 e^{-mu^2 (1/t^2 - 1)} prod_j q_j(t) dt,
///   q_j(t) = \int e^{-u^2} [e^{u^2 t^2} xi_{n^j}(ut) conj(xi_{nhat^j}(ut))] du,
/// where the bracket is a polynomial in u, so Gauss-Hermite is exact per axis.
/// The t integral runs on composite Gauss-Legendre panels graded toward the
/// layer of width ~mu at t = 0. Requires mu > 0 (DomainError otherwise).
///
/// Throws NonConvergence when the refinement difference exceeds 100 * cfg.tol.
GreensValue g_sharp(const GridIndex& n, const GridIndex& nhat, double mu,
                    const QuadratureConfig& cfg = {});

/// Same integral by plain tensor Gauss-Hermite in k with the 1/(k.k+mu^2)
/// factor in the integrand. Converges quickly only for mu >~ 1; kept as an
/// independent cross-check.
GreensValue g_sharp_tensor(const GridIndex& n, const GridIndex& nhat, double mu,
                           const QuadratureConfig& cfg = {});

/// Memoized G#(., .; mu) for every index pair in [0, max_index]^3 x [0, max_index]^3.
///
/// The Schwinger t-rule is fixed by max_index, so all entries share one
/// quadrature and the per-axis q tables are computed once per axis pair.
/// Thread-safe.
class GreensTable {
 public:
  GreensTable(double mu, int max_index, const QuadratureConfig& cfg = {});

  double mu() const { return mu_; }
  int max_index() const { return max_index_; }

  /// Throws std::out_of_range for indices outside the table and
  /// NonConvergence as g_sharp.
  GreensValue operator()(const GridIndex& n, const GridIndex& nhat) const;

 private:
  struct Level {
    quad::Rule t_rule;
    std::vector<double> t_weight;  // 2 * w_t * e^{-mu^2 (1/t^2 - 1)}
    int gh_nodes = 0;
  };
  const std::vector<double>& q_table(int level, int a, int b) const;
  complex evaluate(int level, const GridIndex& n, const GridIndex& nhat) const;

  double mu_;
  int max_index_;
  QuadratureConfig cfg_;
  std::vector<Level> levels_;
  mutable std::mutex mutex_;
  mutable std::map<std::tuple<int, int, int>, std::unique_ptr<std::vector<double>>> q_cache_;
};

/// Breakpoints 0, mu/16, mu/8, ... (while < 1), 1 of the Schwinger t-rule;
/// just {0, 1} at mu = 0.
std::vector<double> schwinger_breakpoints(double mu);

/// Per-axis Schwinger factor q_{ab}(t) by Gauss-Hermite with `nodes` nodes.
/// Real for a = b mod 2 and zero otherwise.
double schwinger_axis_factor(int a, int b, double t, int nodes);

/// Reduced two-dimensional form of G#((n1,0,0), (0,0,0); mu) in spherical
/// coordinates (k = |k|, y = cos theta):
///   pi^{-1/4} \int_0^inf dk [2k^2/(k^2+mu^2)] \int_{-1}^{1} e^{-k^2(1-y^2/2)} xi_{n1}(ky) dy.
/// Composite Gauss-Legendre in k graded toward k ~ mu, Gauss-Legendre in y.
GreensValue g_sharp_axis(int n1, double mu, const QuadratureConfig& cfg = {});

/// mu e^{mu^2} Gamma(-1/2, mu^2) = 2 - 2 sqrt(pi) mu e^{mu^2} erfc(mu).
/// Tends to 2 as mu -> 0+. Throws DomainError unless mu > 0.
double yukawa_coincidence(double mu);

/// Gamma(-1/2, x) = \int_x^inf w^{-3/2} e^{-w} dw
///               = 2 e^{-x}/sqrt(x) - 2 sqrt(pi) erfc(sqrt(x)).
/// The identity is used for x <= 30; beyond that the continued fraction of
/// Gamma(a, x). Throws DomainError unless x > 0.
double incomplete_gamma_neg_half(double x);

/// e^x Gamma(-1/2, x), finite for large x.
double incomplete_gamma_neg_half_scaled(double x);

/// Closed-form Coulomb value at grid index 2*n1:
///   2^{n1+1} n1! / ((2 n1 + 1) sqrt((2 n1)!)), evaluated in log space.
double coulomb_even(int n1);

/// G#((n1,0,0), (0,0,0); 0) from the reduced form at mu = 0. The k integral
/// runs over the whole line with Gauss-Hermite (the integrand is even), the y
/// integral with Gauss-Legendre.
GreensValue coulomb_quadrature(int n1, const QuadratureConfig& cfg = {});

/// Gamma(a)Gamma(b)/Gamma(a+b) via log-gamma. Throws DomainError unless a, b > 0.
double euler_beta(double a, double b);

/// -(g^2/4pi) e^{-mu r}/r. Throws DomainError unless r > 0.
double continuum_yukawa(double r, double mu, double g);

/// The same potential (g = 1) from its radial Fourier integral
///   -(1/4pi) (2/(pi r)) \int_0^inf k sin(rk)/(k^2+mu^2) dk,
/// written as pi/2 - mu^2 \int_0^inf sin(rk)/(k(k^2+mu^2)) dk. The remaining
/// integral is cut at K = mu/sqrt(2 tol), where the tail is below mu^2/(2K^2).
double continuum_yukawa_oracle(double r, double mu, const QuadratureConfig& cfg = {});

/// |sum_a Delta#_a Delta#_a G#(., nhat) (n) - mu^2 G#(n, nhat) + delta_{n nhat}|.
/// The stencil reads G# at n and n +- 2 e_a.
double difference_equation_residual(const GridIndex& n, const GridIndex& nhat, double mu,
                                    const QuadratureConfig& cfg = {});
double difference_equation_residual(const GreensTable& table, const GridIndex& n,
                                    const GridIndex& nhat);

/// W#(n1, mu) = G#((n1,0,0), (0,0,0); mu). mu > 0 goes through g_sharp_axis;
/// mu = 0 uses coulomb_even (even n1) or the exact zero (odd n1), with zero
/// error estimate. Throws DomainError for mu < 0.
GreensValue w_sharp_value(int n1, double mu, const QuadratureConfig& cfg = {});
double w_sharp(int n1, double mu, const QuadratureConfig& cfg = {});

/// -g^2 W#(n1, mu).
double v_sharp(int n1, double mu, double g, const QuadratureConfig& cfg = {});

}  // namespace dps
