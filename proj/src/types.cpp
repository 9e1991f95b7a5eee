#include "dps/types.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace dps {

double MomentumVec::norm() const { return std::sqrt(norm_squared()); }

void QuadratureConfig::validate() const {
  if (gh_nodes < 8) {
    throw std::invalid_argument("gh_nodes must be >= 8, got " + std::to_string(gh_nodes));
  }
  if (radial_nodes < 16) {
    throw std::invalid_argument("radial_nodes must be >= 16, got " + std::to_string(radial_nodes));
  }
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be > 0");
}

QuadratureConfig QuadratureConfig::doubled() const {
  QuadratureConfig c = *this;
  c.gh_nodes *= 2;
  c.radial_nodes *= 2;
  return c;
}

}  // namespace dps
