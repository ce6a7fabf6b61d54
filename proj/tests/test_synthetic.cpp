#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "owl/errors.hpp"
#include "owl/norms.hpp"
#include "owl/synthetic.hpp"
#include "support/generators.hpp"

using namespace owl;

namespace {

// One shared d = 1 draw; the generator is deterministic in the config.
const SyntheticData& baseline() {
  static const SyntheticData data = gen_synthetic({});
  return data;
}

std::size_t nonzero_count(const Eigen::VectorXd& v) {
  std::size_t k = 0;
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (v[i] != 0.0) ++k;
  return k;
}

}  // namespace

TEST_SUITE_BEGIN("synthetic");

TEST_CASE("ground truth layout at d = 1") {
  const SyntheticData& data = baseline();
  REQUIRE(data.x_true.size() == 1000);
  CHECK(nonzero_count(data.x_true) == 150);

  CHECK(data.x_true[0] == 0.0);
  CHECK(data.x_true[149] == 0.0);
  CHECK(data.x_true[150] == 3.0);
  CHECK(data.x_true[199] == 3.0);
  CHECK(data.x_true[200] == 0.0);
  CHECK(data.x_true[449] == 0.0);
  CHECK(data.x_true[450] == -4.0);
  CHECK(data.x_true[499] == -4.0);
  CHECK(data.x_true[500] == 0.0);
  CHECK(data.x_true[749] == 0.0);
  CHECK(data.x_true[750] == 6.0);
  CHECK(data.x_true[799] == 6.0);
  CHECK(data.x_true[800] == 0.0);
  CHECK(data.x_true[999] == 0.0);
}

TEST_CASE("everything scales linearly in d") {
  const SyntheticData data = gen_synthetic({.d = 2, .seed = 7});
  REQUIRE(data.x_true.size() == 2000);
  CHECK(nonzero_count(data.x_true) == 300);
  CHECK(data.x_true[299] == 0.0);
  CHECK(data.x_true[300] == 3.0);
  CHECK(data.A.rows() == 2000);
  CHECK(data.A.cols() == 2000);
  CHECK(data.b.size() == 2000);
  CHECK(data.w.size() == 2000);
}

TEST_CASE("design columns are centred and standardised") {
  const SyntheticData& data = baseline();
  const auto n = data.A.rows();
  for (Eigen::Index j = 0; j < n; j += 37) {
    CHECK(std::abs(data.A.col(j).mean()) <= 1e-12);
    const double var = data.A.col(j).squaredNorm() / static_cast<double>(n - 1);
    CHECK(var == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("neighbouring columns correlate near 0.8") {
  const SyntheticData& data = baseline();
  const auto n = data.A.rows();
  double lag1 = 0.0;
  double lag2 = 0.0;
  for (Eigen::Index j = 0; j + 2 < n; ++j) {
    lag1 += data.A.col(j).dot(data.A.col(j + 1)) / static_cast<double>(n - 1);
    lag2 += data.A.col(j).dot(data.A.col(j + 2)) / static_cast<double>(n - 1);
  }
  lag1 /= static_cast<double>(n - 2);
  lag2 /= static_cast<double>(n - 2);
  CHECK(std::abs(lag1 - 0.8) <= 0.05);
  CHECK(std::abs(lag2 - 0.64) <= 0.07);
  CHECK(lag2 < lag1);
}

TEST_CASE("radius puts the ground truth on the boundary") {
  const SyntheticData& data = baseline();
  CHECK(data.epsilon == doctest::Approx(6.73425).epsilon(1e-12));
  const double direct = eval_owl_norm(
      {data.x_true.data(), static_cast<std::size_t>(data.x_true.size())}, data.w);
  CHECK(data.epsilon == direct);
  CHECK(data.w[0] == doctest::Approx(1e-3 + 1e-5 * 999).epsilon(1e-15));
  CHECK(data.w[999] == doctest::Approx(1e-3).epsilon(1e-15));
}

TEST_CASE("noise level and determinism") {
  const SyntheticData clean = gen_synthetic({.seed = 11, .noise_variance = 0.0});
  const Eigen::VectorXd residual = clean.b - clean.A * clean.x_true;
  CHECK(residual.lpNorm<Eigen::Infinity>() <= 1e-10);

  const SyntheticData& noisy = baseline();
  const double mse =
      (noisy.b - noisy.A * noisy.x_true).squaredNorm() / static_cast<double>(noisy.b.size());
  CHECK(mse > 0.0075);
  CHECK(mse < 0.0125);

  const SyntheticData again = gen_synthetic({});
  CHECK(again.A == baseline().A);
  CHECK(again.b == baseline().b);

  const SyntheticData other = gen_synthetic({.seed = 2});
  CHECK(other.b != baseline().b);
}

TEST_CASE("generator rejects bad configs") {
  CHECK_THROWS_AS(gen_synthetic({.d = 0}), InvalidArgument);
  CHECK_THROWS_AS(gen_synthetic({.noise_variance = -1.0}), InvalidArgument);
}

TEST_CASE("sparse draws hit the requested support size") {
  Rng rng(91);
  const std::vector<double> full = random_sparse_vector(rng, 64, 1.0);
  CHECK(std::count(full.begin(), full.end(), 0.0) == 0);

  std::vector<double> tenth = random_sparse_vector(rng, 1000, 0.1);
  CHECK(std::count_if(tenth.begin(), tenth.end(), [](double v) { return v != 0.0; }) == 100);

  // Tiny densities still produce at least one entry.
  const std::vector<double> tiny = random_sparse_vector(rng, 1000, 1e-6);
  CHECK(std::count_if(tiny.begin(), tiny.end(), [](double v) { return v != 0.0; }) == 1);

  // Supports move around between draws.
  std::set<std::size_t> seen;
  for (int rep = 0; rep < 50; ++rep) {
    const std::vector<double> z = random_sparse_vector(rng, 40, 0.05);
    for (std::size_t i = 0; i < z.size(); ++i)
      if (z[i] != 0.0) seen.insert(i);
  }
  CHECK(seen.size() > 20);

  CHECK_THROWS_AS(random_sparse_vector(rng, 0, 0.5), Empty);
  CHECK_THROWS_AS(random_sparse_vector(rng, 10, 0.0), InvalidArgument);
  CHECK_THROWS_AS(random_sparse_vector(rng, 10, 1.5), InvalidArgument);
}

TEST_CASE("timing harness shapes") {
  const std::vector<double> times = projection_times(1000, 0.5, 4, 3);
  REQUIRE(times.size() == 4);
  double total = 0.0;
  for (double t : times) {
    CHECK(t >= 0.0);
    total += t;
  }
  CHECK(total > 0.0);

  CHECK_THROWS_AS(projection_times(1000, 0.5, 0, 3), InvalidArgument);

  const std::vector<BenchRow> rows = run_bench({500, 1000}, {1.0, 0.5}, 2, 3);
  REQUIRE(rows.size() == 4);
  CHECK(rows[0].n == 500);
  CHECK(rows[0].density == 1.0);
  CHECK(rows[1].n == 500);
  CHECK(rows[1].density == 0.5);
  CHECK(rows[2].n == 1000);
  CHECK(rows[3].density == 0.5);
  for (const BenchRow& row : rows) {
    CHECK(row.mean_s >= 0.0);
    CHECK(row.std_s >= 0.0);
  }

  const std::vector<BenchRow> single = run_bench({300}, {1.0}, 1, 5);
  REQUIRE(single.size() == 1);
  CHECK(single[0].std_s == 0.0);

  const std::vector<BenchRow> parallel = run_bench({200, 400}, {1.0, 0.25}, 2, 9, 4);
  REQUIRE(parallel.size() == 4);
  CHECK(parallel[3].n == 400);
  CHECK(parallel[3].density == 0.25);
}

TEST_SUITE_END();
