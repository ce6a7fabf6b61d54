#include "owl/projection.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "owl/norms.hpp"
#include "owl/partition.hpp"
#include "owl/simplex.hpp"

namespace owl {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Averaged weights over the tie groups of a sorted z, plus the inner product
// <z, w_avg>. The feasibility short-circuit and the instance validation must
// agree bit for bit, so both use this one computation. Group means of a
// nonincreasing sequence are nonincreasing, but mean rounding can lift a
// boundary by an ulp; the left-to-right clamp undoes that and cascades, so
// every group stays constant.
struct WeightReduction {
  std::vector<double> w_avg;
  double inner = 0.0;
};

WeightReduction reduce_weights(std::span<const double> z, const WeightVector& w) {
  WeightReduction red;
  red.w_avg = averaged_vector(w.values(), grouping(z));
  for (std::size_t i = 1; i < red.w_avg.size(); ++i)
    if (red.w_avg[i] > red.w_avg[i - 1]) red.w_avg[i] = red.w_avg[i - 1];
  for (std::size_t i = 0; i < z.size(); ++i) red.inner += z[i] * red.w_avg[i];
  return red;
}

}  // namespace

std::string_view to_string(Branch b) {
  switch (b) {
    case Branch::Feasible: return "feasible";
    case Branch::Simplex: return "simplex";
    case Branch::MergeLambda1: return "merge-λ₁";
    case Branch::Interior: return "interior";
    case Branch::MergeLambda0: return "merge-λ₀";
    case Branch::Threshold: return "threshold";
    case Branch::MergeSuffix: return "merge-G₀";
  }
  return "?";
}

ReducedInstance make_reduced_instance(std::vector<double> z, const WeightVector& w,
                                      double epsilon) {
  if (z.size() != w.size())
    throw DimensionMismatch("reduced instance: vector length " + std::to_string(z.size()) +
                            " vs weight length " + std::to_string(w.size()));
  for (std::size_t i = 1; i < z.size(); ++i)
    if (!(z[i] <= z[i - 1]))
      throw NotMonotone("reduced instance: z increases at position " + std::to_string(i));
  if (!z.empty() && !(z.back() >= 0.0))
    throw Negative("reduced instance: z has a negative tail entry");
  if (!(epsilon > 0.0)) throw InvalidRadius("reduced instance: epsilon must be positive");

  WeightReduction red = reduce_weights(z, w);
  if (!(red.inner > epsilon))
    throw InvalidArgument("reduced instance: <z, w> = " + std::to_string(red.inner) +
                          " is not above epsilon = " + std::to_string(epsilon));
  return ReducedInstance{std::move(z), WeightVector(std::move(red.w_avg)), epsilon};
}

ProjectionResult solve_reduced(const ReducedInstance& inst, const SolveOptions& opt) {
  const std::size_t n = inst.z.size();
  GroupPartition part = GroupPartition::build(inst.z, inst.w.values());

  ProjectionResult res;
  const auto finish = [&](Branch b, const StepRecord& step) {
    res.branch_trace.push_back(b);
    if (opt.record_steps) {
      StepRecord copy = step;
      copy.branch = b;
      res.steps.push_back(copy);
    }
  };

  for (;;) {
    if (res.outer_loops > n)
      throw BranchExhaustion("solve_reduced: loop count exceeded n = " + std::to_string(n));
    ++res.outer_loops;
    StepRecord step;
    step.group_count = part.group_count();

    const double I = part.inner_product();
    const double N = part.weight_norm_sq();

    if (I <= inst.epsilon) {
      res.x_star = part.expand_z();
      res.lambda_star = 0.0;
      finish(Branch::Feasible, step);
      return res;
    }

    const auto [ratio, ratio_group] = part.min_ratio();
    (void)ratio_group;
    step.min_ratio = ratio;
    const double lambda1 = (I - inst.epsilon) / N;
    step.lambda1 = lambda1;

    if (std::isinf(ratio)) {
      // All weight means agree, so the constraint is a scaled simplex.
      const double w_value = part.first_group().mean_w();
      double shift = kNaN;
      res.x_star = project_simplex(part.expand_z(), inst.epsilon / w_value, &shift);
      step.simplex_shift = shift;
      res.lambda_star = shift / w_value;
      finish(Branch::Simplex, step);
      return res;
    }

    // A finite ratio rules out a single group, so the sums excluding the
    // last group are nonempty and the lambda_0 denominator is positive.
    const GroupPartition::GroupInfo last = part.last_group();
    const double excl_inner = I - last.sum_z * last.sum_w / static_cast<double>(last.size());
    const double excl_normsq = N - last.sum_w * last.sum_w / static_cast<double>(last.size());
    const double lambda0 = (excl_inner - inst.epsilon) / excl_normsq;
    step.lambda0 = lambda0;

    // Diagnostic-only scan: on loops decided before the suffix alternatives
    // the negativity set need not be a suffix yet (that is only guaranteed
    // once lambda_0 <= every boundary ratio), so it is never verified here.
    std::size_t n_prime = StepRecord::npos;
    if (opt.record_steps) {
      n_prime = part.suffix_scan(lambda0, false);
      step.n_prime = n_prime;
    }

    if (lambda1 > ratio) {
      part.merge_below_lambda(lambda1);
      finish(Branch::MergeLambda1, step);
      continue;
    }

    if (last.mean_z() - lambda1 * last.mean_w() >= 0.0) {
      res.x_star = part.materialize(lambda1, false);
      res.lambda_star = lambda1;
      finish(Branch::Interior, step);
      return res;
    }

    if (lambda0 > ratio) {
      part.merge_below_lambda(lambda0);
      finish(Branch::MergeLambda0, step);
      continue;
    }

    // Past the merge-lambda_0 gate every stored ratio is >= lambda_0, which
    // makes the group means of z - lambda_0 w nonincreasing; here the scan
    // is load-bearing and the suffix property may be verified.
    if (n_prime == StepRecord::npos || opt.verify_suffix_scan) {
      n_prime = part.suffix_scan(lambda0, opt.verify_suffix_scan);
      step.n_prime = n_prime;
    }

    if (n_prime < n) {
      if (n_prime == part.last_group().first) {
        // The negative part is exactly the last group (structural identity,
        // no coordinate comparison): clamp it.
        res.x_star = part.materialize(lambda0, true);
        res.lambda_star = lambda0;
        finish(Branch::Threshold, step);
        return res;
      }
      part.merge_suffix(n_prime);
      finish(Branch::MergeSuffix, step);
      continue;
    }

    std::ostringstream dump;
    dump << "solve_reduced: no alternative applies (numerical breakdown): "
         << "n=" << n << " groups=" << part.group_count() << " I=" << I << " N=" << N
         << " eps=" << inst.epsilon << " r=" << ratio << " lambda1=" << lambda1
         << " lambda0=" << lambda0 << " n_prime=" << n_prime
         << " last_mean_z=" << last.mean_z() << " last_mean_w=" << last.mean_w();
    throw BranchExhaustion(dump.str());
  }
}

Preprocessing analyze_ordering(std::span<const double> z) {
  Preprocessing pre;
  pre.signs.resize(z.size());
  pre.order.resize(z.size());
  // Sorting (magnitude, index) pairs keeps every comparison local; sorting
  // bare indices through an indirect comparator thrashes the cache once the
  // input outgrows it.
  std::vector<std::pair<double, std::uint32_t>> keyed(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) {
    pre.signs[i] = std::signbit(z[i]) && z[i] != 0.0 ? -1.0 : 1.0;
    keyed[i] = {std::abs(z[i]), static_cast<std::uint32_t>(i)};
  }
  std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;  // stable on ties
  });
  for (std::size_t k = 0; k < z.size(); ++k) pre.order[k] = keyed[k].second;
  return pre;
}

ProjectionResult project_owl_ball(std::span<const double> z, const OwlBall& ball,
                                  const SolveOptions& opt) {
  if (z.size() != ball.weights.size())
    throw DimensionMismatch("project_owl_ball: vector length " + std::to_string(z.size()) +
                            " vs weight length " + std::to_string(ball.weights.size()));
  for (std::size_t i = 0; i < z.size(); ++i)
    if (!std::isfinite(z[i]))
      throw NonFinite("project_owl_ball: non-finite input at position " + std::to_string(i));

  const Preprocessing pre = analyze_ordering(z);
  std::vector<double> sorted(z.size());
  for (std::size_t k = 0; k < z.size(); ++k) sorted[k] = std::abs(z[pre.order[k]]);

  // <sorted, w_avg> is the norm itself; feasible points are their own
  // projection. Deciding with the reduction's arithmetic keeps this test
  // consistent with the instance validation on boundary inputs.
  WeightReduction red = reduce_weights(sorted, ball.weights);
  if (red.inner <= ball.radius) {
    ProjectionResult res;
    res.x_star.assign(z.begin(), z.end());
    res.lambda_star = 0.0;
    res.outer_loops = 0;
    res.branch_trace.push_back(Branch::Feasible);
    if (opt.record_steps) res.steps.push_back(StepRecord{});
    return res;
  }

  // The short-circuit above is exactly the validating builder's check, and
  // sorted magnitudes satisfy its ordering preconditions by construction.
  ReducedInstance inst{std::move(sorted), WeightVector(std::move(red.w_avg)), ball.radius};
  ProjectionResult res = solve_reduced(inst, opt);

  std::vector<double> restored(z.size());
  for (std::size_t k = 0; k < z.size(); ++k) {
    const std::uint32_t i = pre.order[k];
    restored[i] = pre.signs[i] * res.x_star[k];
  }
  res.x_star = std::move(restored);
  return res;
}

std::vector<double> prox_dual_owl(std::span<const double> z, const WeightVector& w,
                                  double gamma) {
  if (!(gamma > 0.0)) throw InvalidArgument("prox_dual_owl: gamma must be positive");
  std::vector<double> scaled(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) scaled[i] = z[i] / gamma;
  const ProjectionResult proj = project_owl_ball(scaled, OwlBall(w, 1.0));
  std::vector<double> out(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) out[i] = z[i] - gamma * proj.x_star[i];
  return out;
}

double KktReport::max_residual() const {
  return std::max({cone, complementarity, dual_negativity, hyperplane});
}

KktReport kkt_certificate(std::span<const double> z, std::span<const double> w,
                          double epsilon, std::span<const double> x, double lambda) {
  KktReport rep;
  const std::size_t n = x.size();
  double v = 0.0, ip = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    v += x[i] - z[i] + lambda * w[i];
    rep.dual_negativity = std::max(rep.dual_negativity, -v);
    const double gap = (i + 1 < n) ? x[i] - x[i + 1] : x[i];
    if (i + 1 < n) rep.cone = std::max(rep.cone, -gap);
    else rep.cone = std::max(rep.cone, -x[i]);
    rep.complementarity = std::max(rep.complementarity, std::abs(v * gap));
    ip += x[i] * w[i];
  }
  rep.hyperplane = std::abs(ip - epsilon);
  return rep;
}

KktReport kkt_certificate(const ReducedInstance& inst, std::span<const double> x,
                          double lambda) {
  return kkt_certificate(inst.z, inst.w.values(), inst.epsilon, x, lambda);
}

}  // namespace owl
