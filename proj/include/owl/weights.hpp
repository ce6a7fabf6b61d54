#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "owl/errors.hpp"

namespace owl {

// Nonincreasing, nonnegative weight sequence with a strictly positive head.
// The constructor enforces the invariant, so holding a WeightVector is proof
// that the weights are admissible.
class WeightVector {
 public:
  explicit WeightVector(std::vector<double> values);

  const std::vector<double>& values() const noexcept { return values_; }
  std::span<const double> span() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const noexcept { return values_[i]; }

 private:
  std::vector<double> values_;
};

// Validates a raw weight sequence. Throws Empty, NotSorted (with the first
// offending position in the message), Negative, or AllZero.
WeightVector validate_weights(std::vector<double> raw);

// w_i = mu1 + mu2 * (n - i) for i = 1..n; nonincreasing by construction.
// Constant weights (mu2 = 0) scale the l1 norm; mu1 = 0 drops the l1 part.
struct OscarParams {
  double mu1 = 0.0;
  double mu2 = 0.0;
  std::size_t n = 0;
};

WeightVector oscar_weights(const OscarParams& params);

// Norm ball {x : sum_i w_i |x|_[i] <= radius}.
struct OwlBall {
  OwlBall(WeightVector w, double r);

  WeightVector weights;
  double radius;
};

}  // namespace owl
