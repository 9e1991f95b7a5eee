#pragma once

// Reference values computed without the library's quadrature or recurrences:
// Boost Hermite polynomials and adaptive quadrature, hand-written matrices.

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/hermite.hpp>

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <initializer_list>
#include <limits>

namespace oracle {

using complex = std::complex<double>;
inline constexpr double pi = 3.14159265358979323846;

inline complex i_pow(int n) {
  static const complex table[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return table[n % 4];
}

/// i^n e^{-k^2/2} H_n(k) / (pi^{1/4} 2^{n/2} sqrt(n!)) straight from the
/// definition. Only sensible while H_n(k) and n! fit in a double (n <~ 60).
inline double xi_magnitude(int n, double k) {
  const double log_norm = 0.25 * std::log(pi) + 0.5 * n * std::log(2.0) + 0.5 * std::lgamma(n + 1.0);
  return std::exp(-0.5 * k * k - log_norm) * boost::math::hermite(static_cast<unsigned>(n), k);
}
inline complex xi(int n, double k) { return i_pow(n) * xi_magnitude(n, k); }

/// Gamma(-1/2, x) = \int_x^inf w^{-3/2} e^{-w} dw, with w = x e^v:
///   x^{-1/2} \int_0^inf e^{-v/2} e^{-x e^v} dv.
inline double gamma_neg_half(double x) {
  boost::math::quadrature::exp_sinh<double> integrator;
  auto f = [x](double v) {
    const double w = x * std::exp(v);
    if (w > 800.0) return 0.0;
    return std::exp(-0.5 * v - w);
  };
  return integrator.integrate(f, 0.0, std::numeric_limits<double>::infinity(), 1e-15) / std::sqrt(x);
}

/// Adaptive Gauss-Kronrod over consecutive panels of `breaks`.
template <class F>
double panels(F&& f, std::initializer_list<double> breaks) {
  using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
  double sum = 0.0;
  const double* b = breaks.begin();
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) sum += GK::integrate(f, b[i], b[i + 1], 12, 1e-13);
  return sum;
}

/// G#((n1,0,0),(0,0,0); mu) in spherical coordinates:
///   (2 pi / pi^{3/2}) \int_0^inf k^2 e^{-k^2}/(k^2+mu^2) \int_{-1}^1 c_n H_n(k y) dy dk,
/// c_n = i^n / (2^{n/2} sqrt(n!)). Real for even n, zero for odd n.
inline double w_sharp(int n1, double mu) {
  if (n1 % 2) return 0.0;
  const double cn = i_pow(n1).real() / std::exp(0.5 * n1 * std::log(2.0) + 0.5 * std::lgamma(n1 + 1.0));
  auto radial = [&](double k) {
    auto ang = [&](double y) { return boost::math::hermite(static_cast<unsigned>(n1), k * y); };
    const double a = boost::math::quadrature::gauss<double, 30>::integrate(ang, -1.0, 1.0);
    return k * k * std::exp(-k * k) / (k * k + mu * mu) * cn * a;
  };
  // e^{-k^2} is below 1e-60 past k = 12
  const double a = std::min(mu, 0.5);
  return 2.0 * pi / std::pow(pi, 1.5) * panels(radial, {0.0, a, 2.0 * a, 1.0, 3.0, 12.0});
}

/// mu e^{mu^2} Gamma(-1/2, mu^2).
inline double yukawa_coincidence(double mu) {
  return mu * std::exp(mu * mu) * gamma_neg_half(mu * mu);
}

/// 2^{n+1} n! / ((2n+1) sqrt((2n)!)) in long double.
inline double coulomb_even(int n) {
  const long double l = (n + 1) * std::log(2.0L) + std::lgamma(n + 1.0L) - std::log(2.0L * n + 1.0L) -
                        0.5L * std::lgamma(2.0L * n + 1.0L);
  return static_cast<double>(std::exp(l));
}

/// Gamma matrices written out entry by entry.
inline Eigen::Matrix4cd gamma(int mu) {
  const complex i(0, 1), o(0, 0), l(1, 0);
  Eigen::Matrix4cd g;
  switch (mu) {
    case 1: g << o, o, o, l, o, o, l, o, o, l, o, o, l, o, o, o; break;
    case 2: g << o, o, o, -i, o, o, i, o, o, -i, o, o, i, o, o, o; break;
    case 3: g << o, o, l, o, o, o, o, -l, l, o, o, o, o, -l, o, o; break;
    default: g << -i, o, o, o, o, -i, o, o, o, o, i, o, o, o, o, i; break;
  }
  return g;
}

}  // namespace oracle
