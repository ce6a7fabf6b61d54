#pragma once

#include <span>
#include <vector>

#include "owl/weights.hpp"

namespace owl {

// |x| sorted nonincreasingly.
std::vector<double> sorted_magnitudes(std::span<const double> x);

// Ordered weighted l1 norm: sum_i w_i |x|_[i], where |x|_[i] is the i-th
// largest magnitude. Constant weights give w_1 * ||x||_1; the weight vector
// (c, 0, ..., 0) gives c * ||x||_inf.
double eval_owl_norm(std::span<const double> x, const WeightVector& w);

// Dual norm: max_j ||x_(j)||_1 / (w_1 + ... + w_j), where x_(j) keeps the j
// largest magnitudes. The denominator is positive for every j because the
// weight head is positive.
double eval_dual_norm(std::span<const double> x, const WeightVector& w);

}  // namespace owl
