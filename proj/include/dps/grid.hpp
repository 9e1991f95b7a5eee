#pragma once

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "dps/types.hpp"

namespace dps {

/// Per-axis extents of a finite sample box (exclusive upper bounds).
///
/// Boxes supplied by callers need extent >= 2 on every axis a stencil acts on;
/// the operators themselves may return boxes that have shrunk to extent 1.
struct GridBox {
  std::array<int, 3> extents{2, 2, 2};

  constexpr GridBox() = default;
  constexpr GridBox(int e1, int e2, int e3) : extents{e1, e2, e3} {}

  constexpr int operator[](Axis a) const { return extents[slot(a)]; }
  constexpr std::size_t size() const {
    return static_cast<std::size_t>(extents[0]) * extents[1] * extents[2];
  }
  friend constexpr bool operator==(const GridBox&, const GridBox&) = default;
};

/// Complex samples over origin + [0, extents), stored densely with axis 1
/// slowest and axis 3 fastest. The origin is (0,0,0) for user-built functions;
/// operators that drop the lowest layer (delta_bwd, or delta_sharp on a box
/// that does not start at 0) return functions with a shifted origin.
class GridFunction {
 public:
  explicit GridFunction(GridBox box, GridIndex origin = {});

  template <class F>
  static GridFunction sample(GridBox box, F&& f, GridIndex origin = {}) {
    GridFunction g(box, origin);
    g.for_each_index([&](const GridIndex& n) { g(n) = f(n); });
    return g;
  }

  const GridBox& box() const { return box_; }
  const GridIndex& origin() const { return origin_; }
  bool contains(const GridIndex& n) const;

  /// Unchecked access by absolute lattice index.
  complex& operator()(const GridIndex& n) { return values_[offset(n)]; }
  const complex& operator()(const GridIndex& n) const { return values_[offset(n)]; }

  /// Checked access; throws std::out_of_range outside the box.
  const complex& at(const GridIndex& n) const;

  std::span<const complex> values() const { return values_; }
  std::span<complex> values() { return values_; }

  /// Visits every stored index in storage order.
  template <class F>
  void for_each_index(F&& f) const {
    GridIndex n;
    for (int a = 0; a < box_.extents[0]; ++a) {
      for (int b = 0; b < box_.extents[1]; ++b) {
        for (int c = 0; c < box_.extents[2]; ++c) {
          n = GridIndex(origin_[0] + a, origin_[1] + b, origin_[2] + c);
          f(n);
        }
      }
    }
  }

  double max_abs() const;

 private:
  std::size_t offset(const GridIndex& n) const {
    const int a = n[0] - origin_[0];
    const int b = n[1] - origin_[1];
    const int c = n[2] - origin_[2];
    return (static_cast<std::size_t>(a) * box_.extents[1] + b) * box_.extents[2] + c;
  }

  GridBox box_;
  GridIndex origin_;
  std::vector<complex> values_;
};

/// (Delta_j f)(n) = f(n + e_j) - f(n). Output drops the top layer of axis j.
GridFunction delta_fwd(const GridFunction& f, Axis axis);

/// (Delta'_j f)(n) = f(n) - f(n - e_j). Output drops the bottom layer of axis j.
GridFunction delta_bwd(const GridFunction& f, Axis axis);

/// (Delta#_j f)(n) = [sqrt(n^j+1) f(n + e_j) - sqrt(n^j) f(n - e_j)] / sqrt(2).
/// At n^j = 0 the lower coefficient is exactly zero and f(n - e_j) is never read.
GridFunction delta_sharp(const GridFunction& f, Axis axis);

/// As delta_sharp with a plus sign between the two terms.
GridFunction delta_circle(const GridFunction& f, Axis axis);

/// sum_a Delta#_a Delta#_a f on the region where all three terms are defined.
/// Needs extent >= 3 per axis.
GridFunction laplacian_sharp(const GridFunction& f);

/// Max-norm residual of the discrete Klein-Gordon operator on the plane-wave
/// mode prod_j xi_{n^j}(k_j) e^{-i omega t} sampled over `box` (origin 0).
///
/// The time derivative is applied exactly, (d/dt)^2 -> -omega^2, so the
/// residual is max |laplacian_sharp f + (omega^2 - mu^2) f| over the interior.
/// `omega` defaults to the dispersion relation sqrt(k.k + mu^2).
double kg_mode_residual(const MomentumVec& k, double mu, GridBox box,
                        std::optional<double> omega = std::nullopt);

}  // namespace dps
