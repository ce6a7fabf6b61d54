#include "owl/solvers.hpp"

#include <chrono>
#include <cmath>
#include <string>

#include "owl/norms.hpp"
#include "owl/projection.hpp"
#include "owl/rng.hpp"

namespace owl {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

double objective(const RegressionProblem& prob, const Eigen::VectorXd& x) {
  return 0.5 * (prob.A * x - prob.b).squaredNorm();
}

double feasibility_gap(const RegressionProblem& prob, const Eigen::VectorXd& x) {
  const double norm =
      eval_owl_norm(std::span<const double>(x.data(), static_cast<std::size_t>(x.size())),
                    prob.ball.weights);
  return std::max(0.0, norm - prob.ball.radius);
}

Eigen::VectorXd project_ball(const Eigen::VectorXd& v, const OwlBall& ball) {
  const ProjectionResult res = project_owl_ball(
      std::span<const double>(v.data(), static_cast<std::size_t>(v.size())), ball);
  return Eigen::Map<const Eigen::VectorXd>(res.x_star.data(),
                                           static_cast<Eigen::Index>(res.x_star.size()));
}

void check_dims(const RegressionProblem& prob, const char* op) {
  if (prob.A.rows() != prob.b.size())
    throw DimensionMismatch(std::string(op) + ": A has " + std::to_string(prob.A.rows()) +
                            " rows but b has " + std::to_string(prob.b.size()) + " entries");
  if (static_cast<std::size_t>(prob.A.cols()) != prob.ball.weights.size())
    throw DimensionMismatch(std::string(op) + ": A has " + std::to_string(prob.A.cols()) +
                            " columns but the ball weights " +
                            std::to_string(prob.ball.weights.size()) + " entries");
}

}  // namespace

double operator_norm(const Eigen::MatrixXd& A) {
  if (A.size() == 0) return 0.0;
  // Fixed-seed random start: a deterministic pattern like all-ones can land
  // exactly orthogonal to the leading eigenvector.
  Rng rng(0x6f3a9c1e5b24d081ULL);
  Eigen::VectorXd v(A.cols());
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = rng.normal();
  v.normalize();
  double sigma = 0.0;
  for (int iter = 0; iter < 1000; ++iter) {
    Eigen::VectorXd u = A.transpose() * (A * v);
    const double norm = u.norm();
    if (norm == 0.0) return 0.0;  // v in the null space of a zero-ish matrix
    v = u / norm;
    const double next = std::sqrt(norm);
    if (std::abs(next - sigma) <= 1e-10 * std::max(next, 1e-300)) return next;
    sigma = next;
  }
  return sigma;
}

double default_step(double operator_norm_estimate) {
  const double safe = 1.01 * operator_norm_estimate;
  return 0.99 / (safe * safe);
}

double fista_momentum_next(double t) { return (1.0 + std::sqrt(1.0 + 4.0 * t * t)) / 2.0; }

namespace {

enum class Gradient { Plain, Accelerated };

SolverTrace gradient_solve(const RegressionProblem& prob, std::optional<double> step,
                           std::size_t iters, Gradient kind) {
  const char* op = (kind == Gradient::Plain) ? "fbs_solve" : "fista_solve";
  check_dims(prob, op);
  const auto t0 = Clock::now();

  const double opnorm = operator_norm(prob.A);
  const double normsq = opnorm * opnorm;
  double gamma;
  if (step) {
    gamma = *step;
    if (!(gamma > 0.0)) throw InvalidArgument(std::string(op) + ": step must be positive");
    if (kind == Gradient::Plain && normsq > 0.0 && gamma >= 2.0 / normsq)
      throw StepTooLarge(std::string(op) + ": step " + std::to_string(gamma) +
                         " >= 2 / ||A||^2 = " + std::to_string(2.0 / normsq));
    if (kind == Gradient::Accelerated && normsq > 0.0 && gamma > 1.0 / normsq)
      throw StepTooLarge(std::string(op) + ": step " + std::to_string(gamma) +
                         " > 1 / ||A||^2 = " + std::to_string(1.0 / normsq));
  } else {
    gamma = default_step(opnorm);
  }

  SolverTrace trace;
  trace.step = gamma;
  trace.operator_norm_estimate = opnorm;

  Eigen::VectorXd x = Eigen::VectorXd::Zero(prob.A.cols());
  trace.rows.push_back({0, objective(prob, x), seconds_since(t0), feasibility_gap(prob, x)});

  Eigen::VectorXd y = x, x_prev = x;
  double t = 1.0;
  for (std::size_t k = 1; k <= iters; ++k) {
    const Eigen::VectorXd& point = (kind == Gradient::Accelerated) ? y : x;
    const Eigen::VectorXd grad = prob.A.transpose() * (prob.A * point - prob.b);
    Eigen::VectorXd next = project_ball(point - gamma * grad, prob.ball);
    if (kind == Gradient::Accelerated) {
      const double t_next = fista_momentum_next(t);
      y = next + ((t - 1.0) / t_next) * (next - x_prev);
      t = t_next;
      x_prev = next;
    }
    x = std::move(next);
    trace.rows.push_back({k, objective(prob, x), seconds_since(t0), feasibility_gap(prob, x)});
  }
  trace.x_final = std::move(x);
  return trace;
}

}  // namespace

SolverTrace fbs_solve(const RegressionProblem& prob, std::optional<double> step,
                      std::size_t iters) {
  return gradient_solve(prob, step, iters, Gradient::Plain);
}

SolverTrace fista_solve(const RegressionProblem& prob, std::optional<double> step,
                        std::size_t iters) {
  return gradient_solve(prob, step, iters, Gradient::Accelerated);
}

SolverTrace drs_solve(const RegressionProblem& prob, double penalty, std::size_t iters) {
  check_dims(prob, "drs_solve");
  if (!(penalty > 0.0)) throw InvalidArgument("drs_solve: penalty must be positive");
  const auto t0 = Clock::now();

  const Eigen::VectorXd atb = prob.A.transpose() * prob.b;
  const Eigen::Index n = prob.A.cols();

  // Warm-started CG on (I + penalty A^T A) u = rhs.
  Eigen::VectorXd u = Eigen::VectorXd::Zero(n);
  const auto resolvent = [&](const Eigen::VectorXd& rhs) -> const Eigen::VectorXd& {
    const auto apply = [&](const Eigen::VectorXd& v) -> Eigen::VectorXd {
      return v + penalty * (prob.A.transpose() * (prob.A * v));
    };
    const double target = 1e-10 * std::max(rhs.norm(), 1e-300);
    Eigen::VectorXd r = rhs - apply(u);
    if (r.norm() <= target) return u;
    Eigen::VectorXd p = r;
    double rr = r.squaredNorm();
    const std::size_t max_rounds = static_cast<std::size_t>(n) * 5 + 50;
    for (std::size_t round = 0; round < max_rounds; ++round) {
      const Eigen::VectorXd ap = apply(p);
      const double alpha = rr / p.dot(ap);
      if (!std::isfinite(alpha))
        throw CGDivergence("drs_solve: conjugate gradient produced a non-finite step");
      u += alpha * p;
      r -= alpha * ap;
      const double rr_next = r.squaredNorm();
      if (std::sqrt(rr_next) <= target) return u;
      p = r + (rr_next / rr) * p;
      rr = rr_next;
    }
    throw CGDivergence("drs_solve: inner solve stalled above the residual target");
  };

  SolverTrace trace;
  trace.step = penalty;

  Eigen::VectorXd s = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd shadow = Eigen::VectorXd::Zero(n);
  trace.rows.push_back(
      {0, objective(prob, shadow), seconds_since(t0), feasibility_gap(prob, shadow)});

  for (std::size_t k = 1; k <= iters; ++k) {
    const Eigen::VectorXd half = resolvent(s + penalty * atb);
    shadow = project_ball(2.0 * half - s, prob.ball);
    s += shadow - half;
    trace.rows.push_back(
        {k, objective(prob, shadow), seconds_since(t0), feasibility_gap(prob, shadow)});
  }
  trace.x_final = std::move(shadow);
  return trace;
}

}  // namespace owl
