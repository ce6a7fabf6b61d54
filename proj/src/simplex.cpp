#include "owl/simplex.hpp"

#include <algorithm>
#include <functional>

namespace owl {

namespace {

double sorted_shift(std::span<const double> z, double kappa) {
  // k = 1 always satisfies the condition because kappa > 0, so the shift is
  // well defined.
  double prefix = 0.0, shift = 0.0;
  for (std::size_t k = 0; k < z.size(); ++k) {
    prefix += z[k];
    const double candidate = (prefix - kappa) / static_cast<double>(k + 1);
    if (candidate < z[k]) shift = candidate;
  }
  return shift;
}

}  // namespace

std::vector<double> project_simplex(std::span<const double> z, double kappa,
                                    double* shift_out) {
  if (!(kappa > 0.0)) throw InvalidRadius("project_simplex: kappa must be positive");
  if (z.empty()) throw Empty("project_simplex: empty vector");

  double shift;
  if (std::is_sorted(z.rbegin(), z.rend())) {
    shift = sorted_shift(z, kappa);
  } else {
    std::vector<double> copy(z.begin(), z.end());
    std::sort(copy.begin(), copy.end(), std::greater<double>());
    shift = sorted_shift(copy, kappa);
  }
  std::vector<double> out(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) out[i] = std::max(z[i] - shift, 0.0);
  if (shift_out) *shift_out = shift;
  return out;
}

}  // namespace owl
