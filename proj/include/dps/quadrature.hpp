#pragma once

#include <span>
#include <vector>

namespace dps::quad {

/// Nodes and weights of a one-dimensional rule.
struct Rule {
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const { return nodes.size(); }
};

/// Gauss-Hermite rule for the weight e^{-x^2} on the real line.
///
/// `scaled_weights[i] = weights[i] * exp(nodes[i]^2)`. Integrals of the form
/// \int xi_n(x) conj(xi_m(x)) f(x) dx are evaluated as
/// sum_i scaled_weights[i] * xi_n(x_i) * conj(xi_m(x_i)) * f(x_i), which keeps
/// every factor bounded even for large node counts.
///
/// Nodes are exactly symmetric: nodes[n-1-i] == -nodes[i].
struct HermiteRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  std::vector<double> scaled_weights;

  std::size_t size() const { return nodes.size(); }
};

/// Largest Gauss-Hermite order: beyond it the scaled weights e^{x^2} overflow.
inline constexpr int max_hermite_order = 340;

/// Cached, thread-safe. 1 <= n <= max_hermite_order.
const HermiteRule& gauss_hermite(int n);

/// Gauss-Legendre on [-1, 1]; cached, thread-safe, exactly symmetric nodes.
const Rule& gauss_legendre(int n);

/// Gauss-Legendre mapped to [a, b].
Rule gauss_legendre(int n, double a, double b);

/// Composite Gauss-Legendre over consecutive panels [b_0,b_1], [b_1,b_2], ...
Rule composite_legendre(std::span<const double> breakpoints, int nodes_per_panel);

}  // namespace dps::quad
