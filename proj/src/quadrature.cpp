#include "dps/quadrature.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>

#include "dps/types.hpp"

namespace dps::quad {
namespace {

// Orthonormal Hermite functions psi_{n}(z), psi_{n-1}(z) by the stable recurrence.
void hermite_function_pair(int n, double z, double& psi_n, double& psi_nm1) {
  double p_prev = 0.0;
  double p = std::pow(pi, -0.25) * std::exp(-0.5 * z * z);
  for (int j = 1; j <= n; ++j) {
    const double next = z * std::sqrt(2.0 / j) * p - std::sqrt((j - 1.0) / j) * p_prev;
    p_prev = p;
    p = next;
  }
  psi_n = p;
  psi_nm1 = p_prev;
}

HermiteRule build_hermite(int n) {
  HermiteRule r;
  r.nodes.assign(n, 0.0);
  r.weights.assign(n, 0.0);
  r.scaled_weights.assign(n, 0.0);
  const int half = (n + 1) / 2;
  std::vector<double> x(half);
  double z = 0.0;
  for (int i = 0; i < half; ++i) {
    // Initial guesses for the largest roots first.
    if (i == 0) {
      z = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -1.0 / 6.0);
    } else if (i == 1) {
      z -= 1.14 * std::pow(static_cast<double>(n), 0.426) / z;
    } else if (i == 2) {
      z = 1.86 * z - 0.86 * x[0];
    } else if (i == 3) {
      z = 1.91 * z - 0.91 * x[1];
    } else {
      z = 2.0 * z - x[i - 2];
    }
    double psi = 0.0, psi_m1 = 0.0, dpsi = 1.0;
    for (int it = 0; it < 100; ++it) {
      hermite_function_pair(n, z, psi, psi_m1);
      dpsi = std::sqrt(2.0 * n) * psi_m1 - z * psi;
      const double dz = psi / dpsi;
      z -= dz;
      if (std::abs(dz) <= 1e-15 * std::max(1.0, std::abs(z))) break;
    }
    if (n % 2 == 1 && i == half - 1) z = 0.0;
    hermite_function_pair(n, z, psi, psi_m1);
    x[i] = z;
    const double scaled = 1.0 / (n * psi_m1 * psi_m1);
    const double w = scaled * std::exp(-z * z);
    r.nodes[n - 1 - i] = z;
    r.nodes[i] = -z;
    r.scaled_weights[i] = r.scaled_weights[n - 1 - i] = scaled;
    r.weights[i] = r.weights[n - 1 - i] = w;
  }
  return r;
}

Rule build_legendre(int n) {
  Rule r;
  r.nodes.assign(n, 0.0);
  r.weights.assign(n, 0.0);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double z = std::cos(pi * (i + 0.75) / (n + 0.5));
    double pp = 1.0;
    for (int it = 0; it < 100; ++it) {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      const double dz = p1 / pp;
      z -= dz;
      if (std::abs(dz) <= 1e-15) break;
    }
    if (n % 2 == 1 && i == half - 1) z = 0.0;
    // Derivative at the converged root.
    double p1 = 1.0, p2 = 0.0;
    for (int j = 1; j <= n; ++j) {
      const double p3 = p2;
      p2 = p1;
      p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
    }
    pp = n * (z * p1 - p2) / (z * z - 1.0);
    const double w = 2.0 / ((1.0 - z * z) * pp * pp);
    r.nodes[i] = -z;
    r.nodes[n - 1 - i] = z;
    r.weights[i] = r.weights[n - 1 - i] = w;
  }
  return r;
}

template <class T, class Builder>
const T& cached(std::map<int, std::unique_ptr<T>>& cache, std::mutex& mu, int n, Builder build) {
  if (n < 1) throw std::invalid_argument("quadrature order must be >= 1");
  std::lock_guard lock(mu);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<T>(build(n));
  return *slot;
}

}  // namespace

const HermiteRule& gauss_hermite(int n) {
  if (n > max_hermite_order) {
    throw std::invalid_argument("Gauss-Hermite order " + std::to_string(n) + " exceeds " +
                                std::to_string(max_hermite_order));
  }
  static std::map<int, std::unique_ptr<HermiteRule>> cache;
  static std::mutex mu;
  return cached(cache, mu, n, build_hermite);
}

const Rule& gauss_legendre(int n) {
  static std::map<int, std::unique_ptr<Rule>> cache;
  static std::mutex mu;
  return cached(cache, mu, n, build_legendre);
}

Rule gauss_legendre(int n, double a, double b) {
  const Rule& ref = gauss_legendre(n);
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  Rule r;
  r.nodes.resize(ref.size());
  r.weights.resize(ref.size());
  for (std::size_t i = 0; i < ref.size(); ++i) {
    r.nodes[i] = mid + half * ref.nodes[i];
    r.weights[i] = half * ref.weights[i];
  }
  return r;
}

Rule composite_legendre(std::span<const double> breakpoints, int nodes_per_panel) {
  Rule r;
  for (std::size_t p = 0; p + 1 < breakpoints.size(); ++p) {
    const Rule panel = gauss_legendre(nodes_per_panel, breakpoints[p], breakpoints[p + 1]);
    r.nodes.insert(r.nodes.end(), panel.nodes.begin(), panel.nodes.end());
    r.weights.insert(r.weights.end(), panel.weights.begin(), panel.weights.end());
  }
  return r;
}

}  // namespace dps::quad
