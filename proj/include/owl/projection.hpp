#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <string_view>
#include <vector>

#include "owl/weights.hpp"

namespace owl {

// Reduced problem data: minimize ||x - z||^2 over nonincreasing nonnegative
// x with <w, x> = epsilon, where z is itself nonincreasing nonnegative and
// strictly infeasible (<z, w> > epsilon). The stored w is averaged over the
// equal-value groups of z; the projection is unchanged by that averaging and
// the optimality certificate below is stated against the averaged weights.
struct ReducedInstance {
  std::vector<double> z;
  WeightVector w;
  double epsilon;
};

// Validates z (NotMonotone / Negative), averages w over the groups of z, and
// checks strict infeasibility (InvalidArgument when <z, w> <= epsilon;
// feasible inputs short-circuit before a reduced instance exists).
ReducedInstance make_reduced_instance(std::vector<double> z, const WeightVector& w,
                                      double epsilon);

enum class Branch : std::uint8_t {
  Feasible,      // <z_G, w_G> <= epsilon: current averaged vector is the answer
  Simplex,       // all boundary ratios infinite: constant weights, simplex shift
  MergeLambda1,  // lambda_1 exceeds the cheapest ratio: coalesce below lambda_1
  Interior,      // x = z - lambda_1 w stays nonnegative: done
  MergeLambda0,  // lambda_0 exceeds the cheapest ratio: coalesce below lambda_0
  Threshold,     // x = max(z - lambda_0 w, 0): negative part is the last group
  MergeSuffix,   // negative part spans several groups: coalesce the suffix
};

std::string_view to_string(Branch b);

// Per-outer-loop diagnostics (recorded only when requested). Quantities not
// computed on a given loop stay NaN / npos.
struct StepRecord {
  static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

  Branch branch = Branch::Feasible;
  // Live groups at the start of the loop; merge branches strictly decrease
  // this from one record to the next.
  std::size_t group_count = 0;
  double min_ratio = std::numeric_limits<double>::quiet_NaN();
  double lambda1 = std::numeric_limits<double>::quiet_NaN();
  double lambda0 = std::numeric_limits<double>::quiet_NaN();
  // First index with z_i - lambda_0 w_i < 0; equals n when there is none
  // (one past the end plays the role of "no negative part").
  std::size_t n_prime = npos;
  double simplex_shift = std::numeric_limits<double>::quiet_NaN();
};

struct SolveOptions {
  // Record a StepRecord per outer loop (and compute n_prime eagerly so the
  // record is complete even on merge loops).
  bool record_steps = false;
  // Cross-check that the groups with negative z - lambda_0 w form a suffix
  // whenever the scan decides the branch; costs O(g) on those loops. Loops
  // decided earlier (merges, interior) are exempt: the property is only
  // guaranteed once lambda_0 is at most every boundary ratio.
  bool verify_suffix_scan = false;
};

// lambda_star is the multiplier certifying optimality (kkt_certificate
// accepts it as-is): lambda_1 for interior exits, lambda_0 for threshold
// exits, and for simplex exits the simplex shift divided by the constant
// weight value. Feasible exits report 0. branch_trace holds one tag per
// outer loop; outer_loops == branch_trace.size() <= n.
struct ProjectionResult {
  std::vector<double> x_star;
  double lambda_star = 0.0;
  std::size_t outer_loops = 0;
  std::vector<Branch> branch_trace;
  std::vector<StepRecord> steps;
};

// Exact solver for the reduced problem; O(n log n). Throws BranchExhaustion
// (with a state dump) if no alternative applies, which is impossible in
// exact arithmetic.
ProjectionResult solve_reduced(const ReducedInstance& inst, const SolveOptions& opt = {});

// Sign-and-order bookkeeping for the reduction to the monotone cone:
// order[k] is the position in z of the k-th largest magnitude (stable: equal
// magnitudes keep their original order) and signs[i] is +-1 with sign(0) = +1.
struct Preprocessing {
  std::vector<double> signs;
  std::vector<std::uint32_t> order;
};

Preprocessing analyze_ordering(std::span<const double> z);

// Projection onto the norm ball {x : owl_norm(x) <= ball.radius}. Feasible
// inputs return unchanged with a single Feasible trace entry and zero outer
// loops; otherwise the problem is reduced (sort magnitudes, remember signs),
// solved, and the solution is mapped back. Throws NonFinite for NaN or
// infinite inputs, DimensionMismatch for length disagreements.
ProjectionResult project_owl_ball(std::span<const double> z, const OwlBall& ball,
                                  const SolveOptions& opt = {});

// prox of gamma * (dual norm) via the Moreau identity:
// prox(z) = z - gamma * P_{ball(w, 1)}(z / gamma), gamma > 0.
std::vector<double> prox_dual_owl(std::span<const double> z, const WeightVector& w,
                                  double gamma);

// Optimality residuals for the reduced problem at (x, lambda). The dual
// variables are reconstructed recursively from the stationarity condition
// (v_i = v_{i-1} + x_i - z_i + lambda w_i, v_0 = 0); the report carries the
// worst violation of each condition. Diagnostic only: no input validation.
struct KktReport {
  double cone = 0.0;             // x nonincreasing, x_n >= 0
  double complementarity = 0.0;  // v_i (x_i - x_{i+1}) = 0 and v_n x_n = 0
  double dual_negativity = 0.0;  // v >= 0
  double hyperplane = 0.0;       // <x, w> = epsilon

  double max_residual() const;
};

KktReport kkt_certificate(std::span<const double> z, std::span<const double> w,
                          double epsilon, std::span<const double> x, double lambda);
KktReport kkt_certificate(const ReducedInstance& inst, std::span<const double> x,
                          double lambda);

}  // namespace owl
