#include "dps/greens.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "dps/errors.hpp"
#include "dps/hermite.hpp"

namespace dps {
namespace {

void require_positive_mu(double mu, const char* op) {
  if (!(mu > 0.0) || !std::isfinite(mu)) {
    throw DomainError(std::string(op) + ": mu must be positive and finite");
  }
}

void require_index(const GridIndex& n) {
  if (!n.nonnegative()) throw DomainError("grid indices must be in N^3");
}

int max_component(const GridIndex& a, const GridIndex& b) {
  return std::max({a[0], a[1], a[2], b[0], b[1], b[2]});
}

bool parity_allowed(const GridIndex& n, const GridIndex& nhat) {
  for (std::size_t j = 0; j < 3; ++j) {
    if ((n[j] - nhat[j]) % 2 != 0) return false;
  }
  return true;
}

GreensValue finish(const char* op, complex coarse, complex fine, const QuadratureConfig& cfg) {
  GreensValue v;
  v.value = fine;
  v.err_estimate = std::abs(fine - coarse);
  if (v.err_estimate > 100.0 * cfg.tol) throw NonConvergence(op, v.err_estimate, 100.0 * cfg.tol);
  return v;
}

}  // namespace

std::vector<double> schwinger_breakpoints(double mu) {
  std::vector<double> b{0.0};
  if (mu > 0.0) {
    for (double x = mu / 16.0; x < 1.0; x *= 2.0) b.push_back(x);
  }
  b.push_back(1.0);
  return b;
}

double schwinger_axis_factor(int a, int b, double t, int nodes) {
  if (a < 0 || b < 0) throw DomainError("Hermite order must be nonnegative");
  if ((a - b) % 2 != 0) return 0.0;
  const auto& rule = quad::gauss_hermite(nodes);
  const int top = std::max(a, b);
  std::vector<complex> seq(static_cast<std::size_t>(top) + 1);
  // Symmetric nodes: the integrand is even, so sum mirrored pairs together.
  const std::size_t N = rule.size();
  double sum = 0.0;
  for (std::size_t i = 0; i < (N + 1) / 2; ++i) {
    const double u = rule.nodes[N - 1 - i];
    xi_sequence(top, u * t, seq);
    const double prod = (seq[a] * std::conj(seq[b])).real();
    const double f = rule.scaled_weights[i] * std::exp(-u * u * (1.0 - t * t)) * prod;
    sum += (i == N - 1 - i) ? f : 2.0 * f;
  }
  return sum;
}

GreensTable::GreensTable(double mu, int max_index, const QuadratureConfig& cfg)
    : mu_(mu), max_index_(max_index), cfg_(cfg) {
  require_positive_mu(mu, "GreensTable");
  cfg.validate();
  if (max_index < 0) throw DomainError("GreensTable: max_index must be nonnegative");

  const auto breaks = schwinger_breakpoints(mu);
  const int panels = static_cast<int>(breaks.size()) - 1;
  const int degree = 6 * max_index;
  QuadratureConfig level_cfg = cfg;
  const int n_levels = cfg.refine ? 2 : 1;
  for (int l = 0; l < n_levels; ++l) {
    Level lv;
    const int per_panel = std::max(level_cfg.radial_nodes / panels, degree / 2 + 8) * (l + 1);
    lv.t_rule = quad::composite_legendre(breaks, per_panel);
    lv.gh_nodes = std::max(level_cfg.gh_nodes, max_index + 2);
    lv.t_weight.resize(lv.t_rule.size());
    for (std::size_t i = 0; i < lv.t_rule.size(); ++i) {
      const double t = lv.t_rule.nodes[i];
      lv.t_weight[i] = 2.0 * lv.t_rule.weights[i] * std::exp(-mu * mu * (1.0 / (t * t) - 1.0));
    }
    levels_.push_back(std::move(lv));
    level_cfg.gh_nodes *= 2;
  }
}

const std::vector<double>& GreensTable::q_table(int level, int a, int b) const {
  std::lock_guard lock(mutex_);
  auto& slot = q_cache_[{level, a, b}];
  if (!slot) {
    const Level& lv = levels_[static_cast<std::size_t>(level)];
    auto table = std::make_unique<std::vector<double>>(lv.t_rule.size(), 0.0);
    for (std::size_t i = 0; i < lv.t_rule.size(); ++i) {
      (*table)[i] = schwinger_axis_factor(a, b, lv.t_rule.nodes[i], lv.gh_nodes);
    }
    slot = std::move(table);
  }
  return *slot;
}

complex GreensTable::evaluate(int level, const GridIndex& n, const GridIndex& nhat) const {
  const Level& lv = levels_[static_cast<std::size_t>(level)];
  const auto& q1 = q_table(level, n[0], nhat[0]);
  const auto& q2 = q_table(level, n[1], nhat[1]);
  const auto& q3 = q_table(level, n[2], nhat[2]);
  double sum = 0.0;
  for (std::size_t i = 0; i < lv.t_weight.size(); ++i) sum += lv.t_weight[i] * q1[i] * q2[i] * q3[i];
  return {sum, 0.0};
}

GreensValue GreensTable::operator()(const GridIndex& n, const GridIndex& nhat) const {
  require_index(n);
  require_index(nhat);
  if (max_component(n, nhat) > max_index_) {
    throw std::out_of_range("GreensTable: index beyond max_index " + std::to_string(max_index_));
  }
  if (!parity_allowed(n, nhat)) return {complex{}, 0.0};
  const complex coarse = evaluate(0, n, nhat);
  if (levels_.size() == 1) return {coarse, std::numeric_limits<double>::infinity()};
  return finish("g_sharp", coarse, evaluate(1, n, nhat), cfg_);
}

GreensValue g_sharp(const GridIndex& n, const GridIndex& nhat, double mu, const QuadratureConfig& cfg) {
  require_index(n);
  require_index(nhat);
  return GreensTable(mu, max_component(n, nhat), cfg)(n, nhat);
}

namespace {

complex g_tensor_at(const GridIndex& n, const GridIndex& nhat, double mu, int nodes) {
  const auto& rule = quad::gauss_hermite(nodes);
  const std::size_t N = rule.size();
  std::array<std::vector<complex>, 3> w;
  for (std::size_t j = 0; j < 3; ++j) {
    const int top = std::max(n[j], nhat[j]);
    std::vector<complex> seq(static_cast<std::size_t>(top) + 1);
    w[j].resize(N);
    for (std::size_t i = 0; i < N; ++i) {
      xi_sequence(top, rule.nodes[i], seq);
      w[j][i] = rule.scaled_weights[i] * seq[n[j]] * std::conj(seq[nhat[j]]);
    }
  }
  complex sum{};
  for (std::size_t a = 0; a < N; ++a) {
    const double k1 = rule.nodes[a] * rule.nodes[a] + mu * mu;
    for (std::size_t b = 0; b < N; ++b) {
      const double k12 = k1 + rule.nodes[b] * rule.nodes[b];
      complex row{};
      for (std::size_t c = 0; c < N; ++c) row += w[2][c] / (k12 + rule.nodes[c] * rule.nodes[c]);
      sum += w[0][a] * w[1][b] * row;
    }
  }
  return sum;
}

}  // namespace

GreensValue g_sharp_tensor(const GridIndex& n, const GridIndex& nhat, double mu,
                           const QuadratureConfig& cfg) {
  require_positive_mu(mu, "g_sharp_tensor");
  require_index(n);
  require_index(nhat);
  cfg.validate();
  if (!parity_allowed(n, nhat)) return {complex{}, 0.0};
  int deg = 0;
  for (std::size_t j = 0; j < 3; ++j) deg = std::max(deg, n[j] + nhat[j]);
  const int nodes = std::max(cfg.gh_nodes, deg / 2 + 2);
  const complex coarse = g_tensor_at(n, nhat, mu, nodes);
  if (!cfg.refine) return {coarse, std::numeric_limits<double>::infinity()};
  return finish("g_sharp_tensor", coarse, g_tensor_at(n, nhat, mu, 2 * nodes), cfg);
}

namespace {

// \int_{-1}^{1} e^{-k^2(1-y^2/2)} xi_n(ky) dy for even n, where xi_n is real.
double axis_y_integral(int n, double k, const quad::Rule& y_rule, std::vector<complex>& seq) {
  const std::size_t N = y_rule.size();
  double sum = 0.0;
  for (std::size_t i = 0; i < (N + 1) / 2; ++i) {
    const double y = y_rule.nodes[N - 1 - i];
    xi_sequence(n, k * y, seq);
    const double f = y_rule.weights[i] * std::exp(-k * k * (1.0 - 0.5 * y * y)) * seq[n].real();
    sum += (i == N - 1 - i) ? f : 2.0 * f;
  }
  return sum;
}

std::vector<double> axis_k_breakpoints(double mu, int n1) {
  std::vector<double> b{0.0};
  for (double x = mu / 8.0; x < 1.0; x *= 2.0) b.push_back(x);
  const double K = 12.0 + std::sqrt(static_cast<double>(n1));
  for (double x = 1.0; x < K + 0.5; x += 1.0) b.push_back(x);
  return b;
}

double axis_at(int n1, double mu, int radial_nodes, int y_nodes) {
  const auto breaks = axis_k_breakpoints(mu, n1);
  const int panels = static_cast<int>(breaks.size()) - 1;
  const auto k_rule = quad::composite_legendre(breaks, std::max(16, radial_nodes / panels));
  const auto& y_rule = quad::gauss_legendre(y_nodes);
  std::vector<complex> seq(static_cast<std::size_t>(n1) + 1);
  double sum = 0.0;
  for (std::size_t i = 0; i < k_rule.size(); ++i) {
    const double k = k_rule.nodes[i];
    const double ratio = 2.0 * k * k / (k * k + mu * mu);
    sum += k_rule.weights[i] * ratio * axis_y_integral(n1, k, y_rule, seq);
  }
  return std::pow(pi, -0.25) * sum;
}

}  // namespace

GreensValue g_sharp_axis(int n1, double mu, const QuadratureConfig& cfg) {
  require_positive_mu(mu, "g_sharp_axis");
  if (n1 < 0) throw DomainError("g_sharp_axis: n1 must be nonnegative");
  cfg.validate();
  if (n1 % 2 == 1) return {complex{}, 0.0};
  const int y_nodes = std::max(32, n1 / 2 + 2);
  const double coarse = axis_at(n1, mu, cfg.radial_nodes, y_nodes);
  if (!cfg.refine) return {coarse, std::numeric_limits<double>::infinity()};
  return finish("g_sharp_axis", coarse, axis_at(n1, mu, 2 * cfg.radial_nodes, 2 * y_nodes), cfg);
}

namespace {

// Modified Lentz evaluation of the continued fraction
//   e^x x^{-a} Gamma(a, x) = 1/(x+1-a- 1(1-a)/(x+3-a- 2(2-a)/(x+5-a- ...))).
double gamma_upper_cf(double a, double x) {
  constexpr double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 10000; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < 1e-16) return h;
  }
  throw NonConvergence("incomplete gamma continued fraction", std::abs(h), 0.0);
}

constexpr double identity_limit = 30.0;

}  // namespace

double incomplete_gamma_neg_half(double x) {
  if (!(x > 0.0)) throw DomainError("incomplete_gamma_neg_half: x must be positive");
  if (x <= identity_limit) {
    return 2.0 * std::exp(-x) / std::sqrt(x) - 2.0 * std::sqrt(pi) * std::erfc(std::sqrt(x));
  }
  return std::exp(-x) * incomplete_gamma_neg_half_scaled(x);
}

double incomplete_gamma_neg_half_scaled(double x) {
  if (!(x > 0.0)) throw DomainError("incomplete_gamma_neg_half: x must be positive");
  if (x <= identity_limit) {
    return 2.0 / std::sqrt(x) - 2.0 * std::sqrt(pi) * std::exp(x) * std::erfc(std::sqrt(x));
  }
  return gamma_upper_cf(-0.5, x) / std::sqrt(x);
}

double yukawa_coincidence(double mu) {
  require_positive_mu(mu, "yukawa_coincidence");
  return mu * incomplete_gamma_neg_half_scaled(mu * mu);
}

double coulomb_even(int n1) {
  if (n1 < 0) throw DomainError("coulomb_even: n1 must be nonnegative");
  const double log_value = (n1 + 1) * std::log(2.0) + std::lgamma(n1 + 1.0) -
                           std::log(2.0 * n1 + 1.0) - 0.5 * std::lgamma(2.0 * n1 + 1.0);
  return std::exp(log_value);
}

namespace {

double coulomb_at(int n1, int gh_nodes, int y_nodes) {
  const auto& rule = quad::gauss_hermite(gh_nodes);
  const auto& y_rule = quad::gauss_legendre(y_nodes);
  std::vector<complex> seq(static_cast<std::size_t>(n1) + 1);
  const std::size_t N = rule.size();
  double sum = 0.0;
  for (std::size_t i = 0; i < (N + 1) / 2; ++i) {
    const double k = rule.nodes[N - 1 - i];
    const double f = rule.scaled_weights[i] * axis_y_integral(n1, k, y_rule, seq);
    sum += (i == N - 1 - i) ? f : 2.0 * f;
  }
  return std::pow(pi, -0.25) * sum;
}

}  // namespace

GreensValue coulomb_quadrature(int n1, const QuadratureConfig& cfg) {
  if (n1 < 0) throw DomainError("coulomb_quadrature: n1 must be nonnegative");
  cfg.validate();
  if (n1 % 2 == 1) return {complex{}, 0.0};
  const int gh = std::max(cfg.gh_nodes, n1 / 2 + 2);
  const int y_nodes = std::max(32, n1 / 2 + 2);
  const double coarse = coulomb_at(n1, gh, y_nodes);
  if (!cfg.refine) return {coarse, std::numeric_limits<double>::infinity()};
  return finish("coulomb_quadrature", coarse, coulomb_at(n1, 2 * gh, 2 * y_nodes), cfg);
}

double euler_beta(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) throw DomainError("euler_beta: arguments must be positive");
  return std::exp(std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b));
}

double continuum_yukawa(double r, double mu, double g) {
  if (!(r > 0.0)) throw DomainError("continuum_yukawa: r must be positive");
  if (mu < 0.0) throw DomainError("continuum_yukawa: mu must be nonnegative");
  return -(g * g / (4.0 * pi)) * std::exp(-mu * r) / r;
}

double continuum_yukawa_oracle(double r, double mu, const QuadratureConfig& cfg) {
  if (!(r > 0.0)) throw DomainError("continuum_yukawa_oracle: r must be positive");
  require_positive_mu(mu, "continuum_yukawa_oracle");
  cfg.validate();
  const double K = std::max(mu / std::sqrt(2.0 * cfg.tol), 50.0 / r);
  // Panels: geometric grading around k ~ mu, then half periods of sin(rk).
  std::vector<double> breaks{0.0};
  for (double x = mu / 16.0; x < 8.0 * mu && x < K; x *= 2.0) breaks.push_back(x);
  const double period = pi / r;
  for (double x = period * std::ceil(breaks.back() / period + 1e-12); x < K; x += period) {
    breaks.push_back(x);
  }
  breaks.push_back(K);
  const auto rule = quad::composite_legendre(breaks, 20);
  double rem = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const double k = rule.nodes[i];
    rem += rule.weights[i] * std::sin(r * k) / (k * (k * k + mu * mu));
  }
  const double radial = 0.5 * pi - mu * mu * rem;
  return -(1.0 / (4.0 * pi)) * (2.0 / (pi * r)) * radial;
}

double difference_equation_residual(const GreensTable& table, const GridIndex& n,
                                     const GridIndex& nhat) {
  require_index(n);
  require_index(nhat);
  auto G = [&](const GridIndex& m) { return table(m, nhat).value; };
  const complex center = G(n);
  complex lap{};
  for (Axis a : all_axes) {
    const double na = n[a];
    complex term = std::sqrt((na + 1.0) * (na + 2.0)) * G(n.shifted(a, 2)) - (2.0 * na + 1.0) * center;
    if (n[a] >= 2) term += std::sqrt(na * (na - 1.0)) * G(n.shifted(a, -2));
    lap += 0.5 * term;
  }
  const double delta = (n == nhat) ? 1.0 : 0.0;
  return std::abs(lap - table.mu() * table.mu() * center + delta);
}

double difference_equation_residual(const GridIndex& n, const GridIndex& nhat, double mu,
                                    const QuadratureConfig& cfg) {
  require_index(n);
  require_index(nhat);
  const GreensTable table(mu, max_component(n, nhat) + 2, cfg);
  return difference_equation_residual(table, n, nhat);
}

GreensValue w_sharp_value(int n1, double mu, const QuadratureConfig& cfg) {
  if (n1 < 0) throw DomainError("w_sharp: n1 must be nonnegative");
  if (mu < 0.0 || !std::isfinite(mu)) throw DomainError("w_sharp: mu must be nonnegative");
  if (mu > 0.0) return g_sharp_axis(n1, mu, cfg);
  if (n1 % 2 == 1) return {complex{}, 0.0};
  return {complex{coulomb_even(n1 / 2), 0.0}, 0.0};
}

double w_sharp(int n1, double mu, const QuadratureConfig& cfg) {
  return w_sharp_value(n1, mu, cfg).value.real();
}

double v_sharp(int n1, double mu, double g, const QuadratureConfig& cfg) {
  return -g * g * w_sharp(n1, mu, cfg);
}

}  // namespace dps
