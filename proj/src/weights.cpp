#include "owl/weights.hpp"

#include <algorithm>
#include <string>
#include <utility>

namespace owl {

WeightVector::WeightVector(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw Empty("weights: empty sequence");
  for (std::size_t i = 1; i < values_.size(); ++i) {
    // NaN fails every comparison, so it also lands here.
    if (!(values_[i] <= values_[i - 1]))
      throw NotSorted("weights: increase at position " + std::to_string(i) +
                      " (" + std::to_string(values_[i - 1]) + " -> " +
                      std::to_string(values_[i]) + ")");
  }
  if (!(values_.back() >= 0.0))
    throw Negative("weights: negative tail value " + std::to_string(values_.back()));
  if (values_.front() <= 0.0) throw AllZero("weights: all entries are zero");
}

WeightVector validate_weights(std::vector<double> raw) {
  return WeightVector(std::move(raw));
}

WeightVector oscar_weights(const OscarParams& params) {
  if (params.n == 0) throw Empty("oscar_weights: n must be positive");
  if (params.mu1 < 0.0 || params.mu2 < 0.0)
    throw Negative("oscar_weights: parameters must be nonnegative");
  if (params.mu1 == 0.0 && params.mu2 == 0.0)
    throw AllZero("oscar_weights: mu1 and mu2 are both zero");
  std::vector<double> w(params.n);
  for (std::size_t i = 0; i < params.n; ++i)
    w[i] = params.mu1 + params.mu2 * static_cast<double>(params.n - 1 - i);
  return WeightVector(std::move(w));
}

OwlBall::OwlBall(WeightVector w, double r) : weights(std::move(w)), radius(r) {
  if (!(radius > 0.0)) throw InvalidRadius("ball radius must be positive");
}

}  // namespace owl
