#include "owl/norms.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

namespace owl {

namespace {

void check_dims(std::span<const double> x, const WeightVector& w, const char* op) {
  if (x.size() != w.size())
    throw DimensionMismatch(std::string(op) + ": vector length " +
                            std::to_string(x.size()) + " vs weight length " +
                            std::to_string(w.size()));
}

}  // namespace

std::vector<double> sorted_magnitudes(std::span<const double> x) {
  std::vector<double> mags(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) mags[i] = std::abs(x[i]);
  std::sort(mags.begin(), mags.end(), std::greater<double>());
  return mags;
}

double eval_owl_norm(std::span<const double> x, const WeightVector& w) {
  check_dims(x, w, "eval_owl_norm");
  const std::vector<double> mags = sorted_magnitudes(x);
  double acc = 0.0;
  for (std::size_t i = 0; i < mags.size(); ++i) acc += w[i] * mags[i];
  return acc;
}

double eval_dual_norm(std::span<const double> x, const WeightVector& w) {
  check_dims(x, w, "eval_dual_norm");
  const std::vector<double> mags = sorted_magnitudes(x);
  double prefix_x = 0.0, prefix_w = 0.0, best = 0.0;
  for (std::size_t j = 0; j < mags.size(); ++j) {
    prefix_x += mags[j];
    prefix_w += w[j];
    best = std::max(best, prefix_x / prefix_w);
  }
  return best;
}

}  // namespace owl
