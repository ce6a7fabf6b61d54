#pragma once

#include <cstddef>
#include <vector>

#include "owl/projection.hpp"

namespace owl {

// Slow, independent reference solvers for the reduced problem. Nothing here
// shares logic with the fast path: candidate generation, multiplier fitting
// and residual evaluation are self-contained so that agreement between the
// two is evidence, not tautology.

struct OracleSolution {
  enum class Method { ActiveSetEnumeration, Dykstra };

  std::vector<double> x;
  Method method = Method::ActiveSetEnumeration;
  double lambda = 0.0;
  KktReport certificate;
};

// Exhaustive search over every interval partition of {0..n-1} and every
// zero-suffix cut: within each structure the multiplier has a closed form,
// and the unique structure passing all optimality conditions identifies the
// solution. Requires n <= 12 (InvalidArgument); throws NoKKTPoint when no
// candidate certifies, which would mean an oracle bug.
OracleSolution oracle_project_small(const ReducedInstance& inst);

// All candidates whose residual is below tol, deduplicated by max-norm
// distance 1e-7. The solution is unique, so anything beyond one entry is a
// bug surface worth inspecting.
std::vector<std::vector<double>> oracle_enumeration_candidates(const ReducedInstance& inst,
                                                               double tol);

// Dykstra's alternating projections between the hyperplane <w, x> = epsilon
// and the monotone nonnegative cone (isotonic regression via
// pool-adjacent-violators, then a zero clamp). Converges to the projection;
// the certificate is fitted after the fact.
OracleSolution dykstra_project(const ReducedInstance& inst, std::size_t iters);

// Isotonic regression onto the nonincreasing cone (no sign constraint).
std::vector<double> pav_nonincreasing(std::span<const double> z);

}  // namespace owl
