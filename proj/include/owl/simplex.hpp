#pragma once

#include <span>
#include <vector>

#include "owl/errors.hpp"

namespace owl {

// Euclidean projection onto {x >= 0, sum_i x_i = kappa}. Already-sorted
// (nonincreasing) input is projected in place order; anything else is sorted
// internally and the result scattered back. Throws InvalidRadius for
// kappa <= 0. O(n) on sorted input, O(n log n) otherwise.
//
// The shift is lambda = (z_1 + ... + z_K - kappa) / K with K the largest k
// satisfying (z_1 + ... + z_k - kappa) / k < z_k on the sorted vector, and
// the result is max(z - lambda, 0). If shift_out is non-null it receives
// lambda.
std::vector<double> project_simplex(std::span<const double> z, double kappa,
                                    double* shift_out = nullptr);

}  // namespace owl
