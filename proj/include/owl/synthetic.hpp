#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "owl/rng.hpp"
#include "owl/weights.hpp"

namespace owl {

// Synthetic regression family, scaled by d >= 1:
//   x_true in R^{1000 d} holds three plateaus (values 3, -4, 6, each 50 d
//   wide) separated by zero blocks; 150 d entries are nonzero.
//   A is 1000 d x 1000 d with column covariance 0.8^|i-j|, realised row by
//   row as an AR(1) process and then column-centred and standardised
//   (sample standard deviation, n - 1 denominator).
//   b = A x_true + noise, noise i.i.d. Gaussian of the given variance.
//   Weights are the linear-decay family w_i = mu1 + mu2 (n - i); the radius
//   puts x_true exactly on the ball boundary.
struct SyntheticConfig {
  std::size_t d = 1;
  std::uint64_t seed = 1;
  double mu1 = 1e-3;
  double mu2 = 1e-5;
  double noise_variance = 0.01;
};

struct SyntheticData {
  Eigen::MatrixXd A;
  Eigen::VectorXd b;
  Eigen::VectorXd x_true;
  WeightVector w;
  double epsilon;
};

SyntheticData gen_synthetic(const SyntheticConfig& cfg);

// Standard Gaussian entries on a uniformly random support of round(density n)
// indices, zero elsewhere.
std::vector<double> random_sparse_vector(Rng& rng, std::size_t n, double density);

// Wall-clock seconds for one projection of such a vector at each run index;
// the weight build, input generation and radius choice are outside the timed
// region. Cell seeding follows derive_stream(seed, n, density_permille, run).
std::vector<double> projection_times(std::size_t n, double density, std::size_t runs,
                                     std::uint64_t seed);

struct BenchRow {
  std::size_t n = 0;
  double density = 0.0;
  double mean_s = 0.0;
  double std_s = 0.0;
};

// Full grid; rows ordered by (length, density) as given. max_threads > 1
// runs cells concurrently (results are independent of scheduling because
// every cell owns its stream).
std::vector<BenchRow> run_bench(const std::vector<std::size_t>& lengths,
                                const std::vector<double>& densities, std::size_t runs,
                                std::uint64_t seed, unsigned max_threads = 1);

}  // namespace owl
