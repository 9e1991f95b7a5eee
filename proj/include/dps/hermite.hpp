#pragma once

#include <span>
#include <vector>

#include "dps/types.hpp"

namespace dps {

/// Largest order accepted by hermite_poly.
inline constexpr int hermite_poly_max_order = 30;

/// Physicists' Hermite polynomial H_n(k) by the three-term recurrence.
/// Throws OrderTooLarge for n > 30 and DomainError for n < 0; use xi() for
/// anything beyond small orders.
double hermite_poly(int n, double k);

/// Scaled Hermite function
///   xi_n(k) = i^n exp(-k^2/2) H_n(k) / (pi^{1/4} 2^{n/2} sqrt(n!)).
///
/// Evaluated by the normalized recurrence
///   xi_{n+1} = i k sqrt(2/(n+1)) xi_n + sqrt(n/(n+1)) xi_{n-1},
/// which carries the phase i^n and never forms H_n or n!. Values beyond the
/// range of exp(-k^2/2) are rescaled internally and underflow gracefully.
complex xi(int n, double k);

/// xi_0(k) ... xi_{n_max}(k) into `out` (size >= n_max + 1).
void xi_sequence(int n_max, double k, std::span<complex> out);
std::vector<complex> xi_sequence(int n_max, double k);

/// prod_j xi_{n^j}(k_j), the plane-wave mode factor.
complex xi_product(const GridIndex& n, const MomentumVec& k);

/// -i Delta# applied to the index of xi:
///   -i/sqrt(2) [sqrt(n+1) xi_{n+1}(k) - sqrt(n) xi_{n-1}(k)],
/// with the lower term absent at n = 0. Equals k * xi_n(k).
complex xi_delta_sharp(int n, double k);

}  // namespace dps
