#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <limits>

namespace dps {

using complex = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846;
inline constexpr complex I{0.0, 1.0};

/// Spatial axis of the discrete phase space, numbered 1..3.
enum class Axis : int { x1 = 1, x2 = 2, x3 = 3 };

inline constexpr std::array<Axis, 3> all_axes{Axis::x1, Axis::x2, Axis::x3};

constexpr std::size_t slot(Axis a) { return static_cast<std::size_t>(a) - 1; }

/// A point n = (n1, n2, n3) of the lattice N^3. Components are not
/// validated here; operations that need n >= 0 check on entry.
struct GridIndex {
  std::array<int, 3> n{0, 0, 0};

  constexpr GridIndex() = default;
  constexpr GridIndex(int n1, int n2, int n3) : n{n1, n2, n3} {}

  constexpr int operator[](Axis a) const { return n[slot(a)]; }
  constexpr int& operator[](Axis a) { return n[slot(a)]; }
  constexpr int operator[](std::size_t j) const { return n[j]; }
  constexpr int& operator[](std::size_t j) { return n[j]; }

  constexpr GridIndex shifted(Axis a, int by) const {
    GridIndex r = *this;
    r[a] += by;
    return r;
  }
  constexpr bool nonnegative() const { return n[0] >= 0 && n[1] >= 0 && n[2] >= 0; }
  constexpr int total() const { return n[0] + n[1] + n[2]; }

  friend constexpr bool operator==(const GridIndex&, const GridIndex&) = default;
};

/// Three-momentum in units hbar = c = l = 1.
struct MomentumVec {
  std::array<double, 3> k{0.0, 0.0, 0.0};

  constexpr MomentumVec() = default;
  constexpr MomentumVec(double k1, double k2, double k3) : k{k1, k2, k3} {}

  constexpr double operator[](std::size_t j) const { return k[j]; }
  constexpr double& operator[](std::size_t j) { return k[j]; }
  constexpr double operator[](Axis a) const { return k[slot(a)]; }

  constexpr double norm_squared() const { return k[0] * k[0] + k[1] * k[1] + k[2] * k[2]; }
  double norm() const;

  friend constexpr MomentumVec operator-(const MomentumVec& a, const MomentumVec& b) {
    return {a.k[0] - b.k[0], a.k[1] - b.k[1], a.k[2] - b.k[2]};
  }
  friend constexpr MomentumVec operator*(double s, const MomentumVec& a) {
    return {s * a.k[0], s * a.k[1], s * a.k[2]};
  }
  friend constexpr bool operator==(const MomentumVec&, const MomentumVec&) = default;
};

/// Node counts and tolerances shared by every quadrature in the library.
///
/// `gh_nodes` is the Gauss-Hermite order per axis. `radial_nodes` is the
/// total node budget of the one-dimensional rules (radial, Schwinger and
/// angular directions); it is spread over the composite panels. With
/// `refine` set, every integral is evaluated a second time with all node
/// counts doubled and the difference is reported as the error estimate.
struct QuadratureConfig {
  int gh_nodes = 64;
  int radial_nodes = 400;
  double tol = 1e-8;
  bool refine = true;

  /// Throws std::invalid_argument when gh_nodes < 8, radial_nodes < 16 or tol <= 0.
  void validate() const;
  QuadratureConfig doubled() const;
};

/// A Green's-function sample with the difference between two refinement
/// levels. Without refinement the estimate is +infinity (unknown).
struct GreensValue {
  complex value{};
  double err_estimate = std::numeric_limits<double>::infinity();
};

/// Masses and coupling of the Yukawa model.
struct MassParam {
  double mu = 0.0;  // exchanged boson
  double m = 1.0;   // fermion
  double g = 1.0;   // coupling
};

}  // namespace dps
