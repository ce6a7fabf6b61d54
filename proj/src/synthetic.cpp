#include "owl/synthetic.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <numeric>
#include <thread>

#include "owl/errors.hpp"
#include "owl/norms.hpp"
#include "owl/projection.hpp"

namespace owl {

namespace {

// Plateau layout, widths in units of d. The zero runs are sized so the total
// is exactly 1000 and the plateaus cover 150.
struct Block {
  std::size_t width;
  double value;
};
constexpr Block kBlocks[] = {
    {150, 0.0}, {50, 3.0}, {250, 0.0}, {50, -4.0}, {250, 0.0}, {50, 6.0}, {200, 0.0},
};

Eigen::VectorXd build_x_true(std::size_t d) {
  std::size_t n = 0;
  for (const Block& b : kBlocks) n += b.width * d;
  Eigen::VectorXd x(static_cast<Eigen::Index>(n));
  Eigen::Index pos = 0;
  for (const Block& b : kBlocks) {
    const auto len = static_cast<Eigen::Index>(b.width * d);
    x.segment(pos, len).setConstant(b.value);
    pos += len;
  }
  return x;
}

}  // namespace

SyntheticData gen_synthetic(const SyntheticConfig& cfg) {
  if (cfg.d == 0) throw InvalidArgument("gen_synthetic: d must be positive");
  if (cfg.noise_variance < 0.0) throw InvalidArgument("gen_synthetic: negative noise variance");

  Eigen::VectorXd x_true = build_x_true(cfg.d);
  const auto n = x_true.size();
  Rng rng(cfg.seed);

  // Each row is an AR(1) sweep across columns with correlation 0.8, so the
  // pre-standardisation column covariance is 0.8^|i-j|.
  Eigen::MatrixXd A(n, n);
  const double rho = 0.8;
  const double innov = std::sqrt(1.0 - rho * rho);
  for (Eigen::Index i = 0; i < n; ++i) {
    double u = rng.normal();
    A(i, 0) = u;
    for (Eigen::Index j = 1; j < n; ++j) {
      u = rho * u + innov * rng.normal();
      A(i, j) = u;
    }
  }

  for (Eigen::Index j = 0; j < n; ++j) {
    auto col = A.col(j);
    col.array() -= col.mean();
    const double sd = std::sqrt(col.squaredNorm() / static_cast<double>(n - 1));
    if (sd > 0.0) col /= sd;
  }

  Eigen::VectorXd b = A * x_true;
  if (cfg.noise_variance > 0.0) {
    const double sigma = std::sqrt(cfg.noise_variance);
    for (Eigen::Index i = 0; i < n; ++i) b[i] += sigma * rng.normal();
  }

  WeightVector w = oscar_weights({cfg.mu1, cfg.mu2, static_cast<std::size_t>(n)});
  const double eps = eval_owl_norm({x_true.data(), static_cast<std::size_t>(n)}, w);
  return SyntheticData{std::move(A), std::move(b), std::move(x_true), std::move(w), eps};
}

std::vector<double> random_sparse_vector(Rng& rng, std::size_t n, double density) {
  if (n == 0) throw Empty("random_sparse_vector: n must be positive");
  if (!(density > 0.0) || density > 1.0)
    throw InvalidArgument("random_sparse_vector: density must lie in (0, 1]");
  auto k = static_cast<std::size_t>(std::llround(density * static_cast<double>(n)));
  k = std::clamp<std::size_t>(k, 1, n);

  std::vector<double> z(n, 0.0);
  if (k == n) {
    for (double& v : z) v = rng.normal();
    return z;
  }
  // Partial Fisher-Yates: after i swaps the prefix holds a uniform i-subset.
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.below(n - i));
    std::swap(idx[i], idx[j]);
    z[idx[i]] = rng.normal();
  }
  return z;
}

std::vector<double> projection_times(std::size_t n, double density, std::size_t runs,
                                     std::uint64_t seed) {
  if (runs == 0) throw InvalidArgument("projection_times: runs must be positive");
  const auto density_permille =
      static_cast<std::uint64_t>(std::llround(density * 1000.0));
  OwlBall ball(oscar_weights({1e-3, 1e-5, n}), 1.0);

  std::vector<double> times;
  times.reserve(runs);
  for (std::size_t run = 0; run < runs; ++run) {
    Rng rng(derive_stream(seed, n, density_permille, run));
    std::vector<double> z = random_sparse_vector(rng, n, density);
    const double omega = eval_owl_norm(z, ball.weights);
    // Half the input's own norm keeps every instance strictly infeasible
    // while scaling with the data.
    OwlBall cell_ball(ball.weights, omega / 2.0);

    const auto t0 = std::chrono::steady_clock::now();
    ProjectionResult res = project_owl_ball(z, cell_ball);
    const auto t1 = std::chrono::steady_clock::now();
    times.push_back(std::chrono::duration<double>(t1 - t0).count());
    if (res.x_star.size() != n) throw RuntimeFailure("projection_times: bad output length");
  }
  return times;
}

namespace {

BenchRow summarize(std::size_t n, double density, const std::vector<double>& times) {
  const double mean =
      std::accumulate(times.begin(), times.end(), 0.0) / static_cast<double>(times.size());
  double var = 0.0;
  for (double t : times) var += (t - mean) * (t - mean);
  var /= static_cast<double>(times.size());
  return BenchRow{n, density, mean, std::sqrt(var)};
}

}  // namespace

std::vector<BenchRow> run_bench(const std::vector<std::size_t>& lengths,
                                const std::vector<double>& densities, std::size_t runs,
                                std::uint64_t seed, unsigned max_threads) {
  struct Cell {
    std::size_t n;
    double density;
  };
  std::vector<Cell> cells;
  for (std::size_t n : lengths)
    for (double density : densities) cells.push_back({n, density});

  std::vector<BenchRow> rows(cells.size());
  if (max_threads <= 1 || cells.size() <= 1) {
    for (std::size_t i = 0; i < cells.size(); ++i)
      rows[i] = summarize(cells[i].n, cells[i].density,
                          projection_times(cells[i].n, cells[i].density, runs, seed));
    return rows;
  }

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next.fetch_add(1); i < cells.size(); i = next.fetch_add(1))
      rows[i] = summarize(cells[i].n, cells[i].density,
                          projection_times(cells[i].n, cells[i].density, runs, seed));
  };
  const unsigned count = std::min<unsigned>(max_threads, static_cast<unsigned>(cells.size()));
  std::vector<std::thread> pool;
  pool.reserve(count);
  for (unsigned t = 0; t < count; ++t) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();
  return rows;
}

}  // namespace owl
