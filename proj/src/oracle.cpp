#include "owl/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace owl {

namespace {

// Residuals evaluated directly from the optimality conditions. Deliberately
// re-derived here rather than reusing kkt_certificate: the oracle must not
// inherit a bug from the code it is checking.
KktReport residuals(std::span<const double> z, std::span<const double> w, double eps,
                    std::span<const double> x, double lambda) {
  KktReport rep;
  const std::size_t n = x.size();
  double v = 0.0, ip = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    v += x[i] - z[i] + lambda * w[i];
    if (v < -rep.dual_negativity) rep.dual_negativity = -v;
    const double gap = (i + 1 < n) ? x[i] - x[i + 1] : x[i];
    if (gap < -rep.cone) rep.cone = -gap;
    rep.complementarity = std::max(rep.complementarity, std::abs(v * gap));
    ip += x[i] * w[i];
  }
  rep.hyperplane = std::abs(ip - eps);
  return rep;
}

struct Candidate {
  std::vector<double> x;
  double lambda = 0.0;
  double residual = std::numeric_limits<double>::infinity();
};

// Visits every (interval partition, zero-suffix cut) structure. Within a
// structure the multiplier is forced by the hyperplane constraint:
//   lambda = (sum_j S_w(G_j) mean_z(G_j) - eps) / sum_j S_w(G_j) mean_w(G_j)
// over the active prefix groups, and x is constant z̄_j - lambda w̄_j there,
// zero on the rest.
template <typename Visit>
void enumerate_structures(const ReducedInstance& inst, Visit&& visit) {
  const std::size_t n = inst.z.size();
  const std::span<const double> z(inst.z);
  const std::span<const double> w(inst.w.values());

  std::vector<double> pz(n + 1, 0.0), pw(n + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    pz[i + 1] = pz[i] + z[i];
    pw[i + 1] = pw[i] + w[i];
  }

  std::vector<std::size_t> bounds;  // group end indices (exclusive)
  std::vector<double> x(n);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (n - 1)); ++mask) {
    bounds.clear();
    for (std::size_t i = 0; i + 1 < n; ++i)
      if (mask & (std::uint64_t{1} << i)) bounds.push_back(i + 1);
    bounds.push_back(n);

    const std::size_t g = bounds.size();
    for (std::size_t active = 1; active <= g; ++active) {
      double num = 0.0, den = 0.0;
      for (std::size_t j = 0; j < active; ++j) {
        const std::size_t lo = (j == 0) ? 0 : bounds[j - 1];
        const std::size_t hi = bounds[j];
        const double size = static_cast<double>(hi - lo);
        const double sz = pz[hi] - pz[lo];
        const double sw = pw[hi] - pw[lo];
        num += sw * (sz / size);
        den += sw * (sw / size);
      }
      const double lambda = (num - inst.epsilon) / den;

      for (std::size_t j = 0; j < g; ++j) {
        const std::size_t lo = (j == 0) ? 0 : bounds[j - 1];
        const std::size_t hi = bounds[j];
        double value = 0.0;
        if (j < active) {
          const double size = static_cast<double>(hi - lo);
          value = (pz[hi] - pz[lo]) / size - lambda * ((pw[hi] - pw[lo]) / size);
        }
        for (std::size_t i = lo; i < hi; ++i) x[i] = value;
      }
      visit(x, lambda, residuals(z, w, inst.epsilon, x, lambda).max_residual());
    }
  }
}

double linf_distance(std::span<const double> a, std::span<const double> b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

double oracle_scale(const ReducedInstance& inst) {
  double s = std::max(1.0, inst.epsilon);
  for (const double v : inst.z) s = std::max(s, std::abs(v));
  return s;
}

}  // namespace

OracleSolution oracle_project_small(const ReducedInstance& inst) {
  const std::size_t n = inst.z.size();
  if (n > 12)
    throw InvalidArgument("oracle_project_small: n = " + std::to_string(n) +
                          " exceeds the enumeration limit of 12");

  Candidate best;
  enumerate_structures(inst, [&](const std::vector<double>& x, double lambda, double res) {
    if (res < best.residual) best = Candidate{x, lambda, res};
  });

  if (!(best.residual <= 1e-10 * oracle_scale(inst)))
    throw NoKKTPoint("oracle_project_small: best residual " + std::to_string(best.residual) +
                     " fails the certificate threshold");
  OracleSolution sol;
  sol.x = std::move(best.x);
  sol.method = OracleSolution::Method::ActiveSetEnumeration;
  sol.lambda = best.lambda;
  sol.certificate = residuals(inst.z, inst.w.values(), inst.epsilon, sol.x, sol.lambda);
  return sol;
}

std::vector<std::vector<double>> oracle_enumeration_candidates(const ReducedInstance& inst,
                                                               double tol) {
  if (inst.z.size() > 12)
    throw InvalidArgument("oracle_enumeration_candidates: n exceeds the enumeration limit");
  std::vector<std::vector<double>> reps;
  enumerate_structures(inst, [&](const std::vector<double>& x, double, double res) {
    if (res > tol) return;
    for (const auto& r : reps)
      if (linf_distance(r, x) <= 1e-7) return;
    reps.push_back(x);
  });
  return reps;
}

std::vector<double> pav_nonincreasing(std::span<const double> z) {
  std::vector<double> sum;
  std::vector<std::size_t> cnt;
  sum.reserve(z.size());
  cnt.reserve(z.size());
  for (const double v : z) {
    sum.push_back(v);
    cnt.push_back(1);
    // Pool while the fitted means would increase left to right.
    while (sum.size() >= 2) {
      const std::size_t m = sum.size();
      if (sum[m - 2] * static_cast<double>(cnt[m - 1]) <
          sum[m - 1] * static_cast<double>(cnt[m - 2])) {
        sum[m - 2] += sum[m - 1];
        cnt[m - 2] += cnt[m - 1];
        sum.pop_back();
        cnt.pop_back();
      } else {
        break;
      }
    }
  }
  std::vector<double> out(z.size());
  std::size_t pos = 0;
  for (std::size_t b = 0; b < sum.size(); ++b) {
    const double mean = sum[b] / static_cast<double>(cnt[b]);
    for (std::size_t k = 0; k < cnt[b]; ++k) out[pos++] = mean;
  }
  return out;
}

OracleSolution dykstra_project(const ReducedInstance& inst, std::size_t iters) {
  const std::size_t n = inst.z.size();
  const std::span<const double> w(inst.w.values());
  double wnormsq = 0.0;
  for (const double wi : w) wnormsq += wi * wi;

  std::vector<double> x(inst.z.begin(), inst.z.end());
  std::vector<double> p(n, 0.0), q(n, 0.0), t(n), u(n);
  for (std::size_t iter = 0; iter < iters; ++iter) {
    for (std::size_t i = 0; i < n; ++i) t[i] = x[i] + p[i];
    double ip = 0.0;
    for (std::size_t i = 0; i < n; ++i) ip += w[i] * t[i];
    const double corr = (inst.epsilon - ip) / wnormsq;
    for (std::size_t i = 0; i < n; ++i) {
      const double y = t[i] + corr * w[i];
      p[i] = t[i] - y;
      u[i] = y + q[i];
    }
    std::vector<double> fitted = pav_nonincreasing(u);
    for (std::size_t i = 0; i < n; ++i) {
      const double v = std::max(fitted[i], 0.0);
      q[i] = u[i] - v;
      x[i] = v;
    }
  }

  // Fit the multiplier after the fact: the reconstructed duals are affine in
  // lambda (v_i = base_i + lambda * W_i), so candidates that zero one of them
  // plus the least-squares value cover the optimum.
  std::vector<double> base(n), prefw(n);
  double acc = 0.0, wsum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    acc += x[i] - inst.z[i];
    base[i] = acc;
    wsum += w[i];
    prefw[i] = wsum;
  }
  double zx = 0.0;
  for (std::size_t i = 0; i < n; ++i) zx += (inst.z[i] - x[i]) * w[i];
  std::vector<double> cands{zx / wnormsq};
  for (std::size_t i = 0; i < n; ++i) cands.push_back(-base[i] / prefw[i]);

  OracleSolution sol;
  sol.method = OracleSolution::Method::Dykstra;
  double best = std::numeric_limits<double>::infinity();
  for (const double lam : cands) {
    const double res = residuals(inst.z, w, inst.epsilon, x, lam).max_residual();
    if (res < best) {
      best = res;
      sol.lambda = lam;
    }
  }
  sol.certificate = residuals(inst.z, w, inst.epsilon, x, sol.lambda);
  sol.x = std::move(x);
  return sol;
}

}  // namespace owl
