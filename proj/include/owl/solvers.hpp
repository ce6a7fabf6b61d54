#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <optional>
#include <vector>

#include "owl/weights.hpp"

namespace owl {

// min 0.5 ||A x - b||^2 subject to x in the norm ball.
struct RegressionProblem {
  Eigen::MatrixXd A;
  Eigen::VectorXd b;
  OwlBall ball;
};

struct TraceRow {
  std::size_t iter = 0;
  double objective = 0.0;
  double elapsed_s = 0.0;
  double feasibility = 0.0;  // max(0, owl_norm(x) - radius)
};

// rows[0] is the starting point (x = 0); rows[k] is the k-th iterate. For
// the gradient methods the clock starts before the operator-norm estimate,
// so that setup cost is visible in the trace.
struct SolverTrace {
  std::vector<TraceRow> rows;
  Eigen::VectorXd x_final;
  double step = 0.0;
  double operator_norm_estimate = 0.0;
};

// Spectral norm by power iteration on A^T A (relative change <= 1e-10 or
// 1000 rounds). The raw estimate approaches from below; callers sizing steps
// from it apply a 1.01 safety factor (see default_step).
double operator_norm(const Eigen::MatrixXd& A);

// 0.99 / (1.01 * ||A||)^2.
double default_step(double operator_norm_estimate);

// Projected gradient (forward-backward). step empty -> default; any
// explicit step must satisfy step < 2 / ||A||^2 (StepTooLarge otherwise).
// The objective is nonincreasing for the default step.
SolverTrace fbs_solve(const RegressionProblem& prob, std::optional<double> step,
                      std::size_t iters);

// Accelerated variant; momentum t_{k+1} = (1 + sqrt(1 + 4 t_k^2)) / 2 applied
// to the iterate difference. Explicit steps must satisfy
// step <= 1 / ||A||^2.
SolverTrace fista_solve(const RegressionProblem& prob, std::optional<double> step,
                        std::size_t iters);

double fista_momentum_next(double t);

// Douglas-Rachford splitting on the least-squares term and the ball
// indicator. The quadratic resolvent (I + gamma A^T A)^{-1} is applied by
// warm-started conjugate gradients to relative residual 1e-10 (CGDivergence
// if an inner solve stalls). Reported iterates are the projected shadow
// sequence, hence always feasible. penalty defaults to 1.
SolverTrace drs_solve(const RegressionProblem& prob, double penalty, std::size_t iters);

}  // namespace owl
