#pragma once

#include <stdexcept>
#include <string>

namespace dps {

/// Argument outside the mathematical domain of an operation (r <= 0, x <= 0, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// hermite_poly called beyond the order where the plain recurrence is safe.
class OrderTooLarge : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// A stencil would produce an empty output box.
class BoxTooSmall : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Two refinement levels of a quadrature disagree beyond the allowed threshold.
class NonConvergence : public std::runtime_error {
 public:
  NonConvergence(const std::string& what, double disagreement, double threshold)
      : std::runtime_error(what + " (refinement disagreement " + std::to_string(disagreement) +
                           " > " + std::to_string(threshold) + ")"),
        disagreement_(disagreement),
        threshold_(threshold) {}

  double disagreement() const noexcept { return disagreement_; }
  double threshold() const noexcept { return threshold_; }

 private:
  double disagreement_;
  double threshold_;
};

}  // namespace dps
