#ifndef HERDGAMES_MEASURE_HPP
#define HERDGAMES_MEASURE_HPP

#include <cstddef>
#include <vector>

#include "herdgames/errors.hpp"

namespace herdgames {

// Absolute tolerance used for simplex validation, equality tests and argmax
// ties throughout the library.
struct Tolerance {
  double eps = 1e-9;
};

// A point on the probability simplex over a finite action set: one weight per
// action, weights in [0,1], summing to one (both within Tolerance::eps).
// Weights are clamped to [0,1] once validation passes. Immutable after
// construction.
class Measure {
 public:
  Measure(std::vector<double> weights, Tolerance tol = {});

  std::size_t size() const { return weights_.size(); }
  double operator[](std::size_t i) const { return weights_[i]; }
  const std::vector<double>& weights() const { return weights_; }

  // Largest absolute componentwise difference; throws on size mismatch.
  double max_norm_distance(const Measure& other) const;

 private:
  std::vector<double> weights_;
};

// Validating factory; throws NotASimplexPoint with the offending values.
Measure make_measure(std::vector<double> weights, Tolerance tol = {});

// Indices i with mu_i > eps, ascending. Nonempty for every valid Measure.
std::vector<int> support(const Measure& mu, Tolerance tol = {});

// The action adopted by herding players: the smallest index attaining the
// eps-relaxed maximum weight, min{i : mu_i >= max_j mu_j - eps}.
int herding_choice(const Measure& mu, Tolerance tol = {});

// Indices attaining the eps-relaxed maximum of an arbitrary value vector,
// ascending. Shared by weight argmax and utility argmax computations.
std::vector<int> eps_argmax(const std::vector<double>& values, double eps);

}  // namespace herdgames

#endif  // HERDGAMES_MEASURE_HPP
