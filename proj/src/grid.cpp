#include "dps/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "dps/errors.hpp"
#include "dps/hermite.hpp"

namespace dps {

GridFunction::GridFunction(GridBox box, GridIndex origin) : box_(box), origin_(origin) {
  for (int e : box_.extents) {
    if (e < 1) throw BoxTooSmall("grid box extents must be positive");
  }
  if (!origin_.nonnegative()) throw std::invalid_argument("grid origin must be in N^3");
  values_.assign(box_.size(), complex{});
}

bool GridFunction::contains(const GridIndex& n) const {
  for (std::size_t j = 0; j < 3; ++j) {
    if (n[j] < origin_[j] || n[j] >= origin_[j] + box_.extents[j]) return false;
  }
  return true;
}

const complex& GridFunction::at(const GridIndex& n) const {
  if (!contains(n)) throw std::out_of_range("grid index outside the sampled box");
  return (*this)(n);
}

double GridFunction::max_abs() const {
  double m = 0.0;
  for (const auto& v : values_) m = std::max(m, std::abs(v));
  return m;
}

namespace {

// Output region [lo, lo + extent) along `axis`, all other axes unchanged.
GridFunction with_axis_range(const GridFunction& f, Axis axis, int lo, int extent,
                             const char* op) {
  if (extent < 1) {
    throw BoxTooSmall(std::string(op) + ": output box along axis " +
                      std::to_string(static_cast<int>(axis)) + " would be empty");
  }
  GridBox box = f.box();
  box.extents[slot(axis)] = extent;
  GridIndex origin = f.origin();
  origin[axis] = lo;
  return GridFunction(box, origin);
}

template <int Sign>
GridFunction weighted_stencil(const GridFunction& f, Axis axis, const char* op) {
  const int lo = f.origin()[axis];
  const int hi = lo + f.box()[axis];  // exclusive
  // Upper neighbour always required; lower neighbour only when n^j > 0.
  const int out_lo = (lo == 0) ? 0 : lo + 1;
  const int out_hi = hi - 1;
  GridFunction out = with_axis_range(f, axis, out_lo, out_hi - out_lo, op);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  out.for_each_index([&](const GridIndex& n) {
    const int nj = n[axis];
    complex v = std::sqrt(nj + 1.0) * f(n.shifted(axis, +1));
    if (nj > 0) {
      const complex lower = std::sqrt(static_cast<double>(nj)) * f(n.shifted(axis, -1));
      v = (Sign > 0) ? v + lower : v - lower;
    }
    out(n) = inv_sqrt2 * v;
  });
  return out;
}

}  // namespace

GridFunction delta_fwd(const GridFunction& f, Axis axis) {
  const int lo = f.origin()[axis];
  GridFunction out = with_axis_range(f, axis, lo, f.box()[axis] - 1, "delta_fwd");
  out.for_each_index([&](const GridIndex& n) { out(n) = f(n.shifted(axis, +1)) - f(n); });
  return out;
}

GridFunction delta_bwd(const GridFunction& f, Axis axis) {
  const int lo = f.origin()[axis];
  GridFunction out = with_axis_range(f, axis, lo + 1, f.box()[axis] - 1, "delta_bwd");
  out.for_each_index([&](const GridIndex& n) { out(n) = f(n) - f(n.shifted(axis, -1)); });
  return out;
}

GridFunction delta_sharp(const GridFunction& f, Axis axis) {
  return weighted_stencil<-1>(f, axis, "delta_sharp");
}

GridFunction delta_circle(const GridFunction& f, Axis axis) {
  return weighted_stencil<+1>(f, axis, "delta_circle");
}

GridFunction laplacian_sharp(const GridFunction& f) {
  for (Axis a : all_axes) {
    if (f.box()[a] < 3) {
      throw BoxTooSmall("laplacian_sharp needs extent >= 3 on axis " +
                        std::to_string(static_cast<int>(a)));
    }
  }
  std::array<GridFunction, 3> terms{delta_sharp(delta_sharp(f, Axis::x1), Axis::x1),
                                    delta_sharp(delta_sharp(f, Axis::x2), Axis::x2),
                                    delta_sharp(delta_sharp(f, Axis::x3), Axis::x3)};
  // Common region of the three terms.
  GridIndex lo;
  GridBox box;
  for (std::size_t j = 0; j < 3; ++j) {
    int l = 0, h = 1 << 30;
    for (const auto& t : terms) {
      l = std::max(l, t.origin()[j]);
      h = std::min(h, t.origin()[j] + t.box().extents[j]);
    }
    if (h <= l) throw BoxTooSmall("laplacian_sharp: empty interior");
    lo[j] = l;
    box.extents[j] = h - l;
  }
  GridFunction out(box, lo);
  out.for_each_index([&](const GridIndex& n) { out(n) = terms[0](n) + terms[1](n) + terms[2](n); });
  return out;
}

double kg_mode_residual(const MomentumVec& k, double mu, GridBox box, std::optional<double> omega) {
  if (!(mu > 0.0)) throw DomainError("kg_mode_residual: mu must be positive");
  const double w = omega.value_or(std::sqrt(k.norm_squared() + mu * mu));
  const auto f = GridFunction::sample(box, [&](const GridIndex& n) { return xi_product(n, k); });
  const auto lap = laplacian_sharp(f);
  double worst = 0.0;
  lap.for_each_index([&](const GridIndex& n) {
    worst = std::max(worst, std::abs(lap(n) + (w * w - mu * mu) * f(n)));
  });
  return worst;
}

}  // namespace dps
