#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dps/dirac.hpp"

namespace dps {

enum class CheckSuite { fast, full };

struct CheckOptions {
  GammaSet gammas = gamma_set();
  std::uint64_t seed = 20240521;
};

struct CheckResult {
  std::string name;
  double tolerance = 0.0;
  double observed = 0.0;
  bool pass = false;
};

/// Runs the invariant suite. `fast` covers every module at small sizes; `full`
/// adds the difference-equation box, the cross-method Green's comparison and
/// the Moller order-of-operations oracle. A check that throws is reported as
/// failed with observed = +inf.
std::vector<CheckResult> run_checks(CheckSuite suite, const CheckOptions& opts = {});

/// Flips the sign of gamma^1[0][3]; used as a negative control.
GammaSet corrupted_gamma_set();

}  // namespace dps
