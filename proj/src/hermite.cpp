#include "dps/hermite.hpp"

#include <cmath>
#include <string>

#include "dps/errors.hpp"

namespace dps {
namespace {

void require_order(int n) {
  if (n < 0) throw DomainError("Hermite order must be nonnegative, got " + std::to_string(n));
}

// Below this exponent the seed exp(-k^2/2) loses precision; run the
// recurrence on a rescaled seed and restore the scale per entry.
constexpr double log_seed_floor = -600.0;
constexpr double rescale_at = 1e200;

}  // namespace

double hermite_poly(int n, double k) {
  require_order(n);
  if (n > hermite_poly_max_order) {
    throw OrderTooLarge("hermite_poly order " + std::to_string(n) + " exceeds " +
                        std::to_string(hermite_poly_max_order) + "; use xi()");
  }
  if (n == 0) return 1.0;
  double h_prev = 1.0;
  double h = 2.0 * k;
  for (int j = 1; j < n; ++j) {
    const double next = 2.0 * k * h - 2.0 * j * h_prev;
    h_prev = h;
    h = next;
  }
  return h;
}

void xi_sequence(int n_max, double k, std::span<complex> out) {
  require_order(n_max);
  if (out.size() < static_cast<std::size_t>(n_max) + 1) {
    throw std::invalid_argument("xi_sequence: output span too small");
  }
  const double log_seed = -0.5 * k * k - 0.25 * std::log(pi);

  if (log_seed > log_seed_floor) {
    out[0] = complex(std::exp(log_seed), 0.0);
    if (n_max == 0) return;
    out[1] = I * (k * std::sqrt(2.0)) * out[0];
    for (int n = 1; n < n_max; ++n) {
      const double a = k * std::sqrt(2.0 / (n + 1));
      const double b = std::sqrt(static_cast<double>(n) / (n + 1));
      out[n + 1] = I * a * out[n] + b * out[n - 1];
    }
    return;
  }

  // Rescaled path: value_n = mantissa_n * exp(log_scale_n).
  std::vector<double> log_scale(n_max + 1, log_seed);
  complex prev{0.0, 0.0};
  complex cur{1.0, 0.0};
  double scale = log_seed;
  out[0] = cur;
  for (int n = 0; n < n_max; ++n) {
    const double a = k * std::sqrt(2.0 / (n + 1));
    const double b = std::sqrt(static_cast<double>(n) / (n + 1));
    complex next = I * a * cur + b * prev;
    prev = cur;
    cur = next;
    if (std::abs(cur) > rescale_at) {
      cur /= rescale_at;
      prev /= rescale_at;
      scale += std::log(rescale_at);
    }
    out[n + 1] = cur;
    log_scale[n + 1] = scale;
  }
  for (int n = 0; n <= n_max; ++n) out[n] *= std::exp(log_scale[n]);
}

std::vector<complex> xi_sequence(int n_max, double k) {
  std::vector<complex> v(static_cast<std::size_t>(n_max) + 1);
  xi_sequence(n_max, k, v);
  return v;
}

complex xi(int n, double k) {
  require_order(n);
  if (n == 0) return xi_sequence(0, k)[0];
  return xi_sequence(n, k)[n];
}

complex xi_product(const GridIndex& n, const MomentumVec& k) {
  complex p{1.0, 0.0};
  for (std::size_t j = 0; j < 3; ++j) p *= xi(n[j], k[j]);
  return p;
}

complex xi_delta_sharp(int n, double k) {
  require_order(n);
  const auto seq = xi_sequence(n + 1, k);
  complex bracket = std::sqrt(n + 1.0) * seq[n + 1];
  if (n > 0) bracket -= std::sqrt(static_cast<double>(n)) * seq[n - 1];
  return -I / std::sqrt(2.0) * bracket;
}

}  // namespace dps
