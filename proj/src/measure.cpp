#include "herdgames/measure.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace herdgames {

namespace {

std::string format_weights(const std::vector<double>& w) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) os << ", ";
    os << w[i];
  }
  os << "]";
  return os.str();
}

}  // namespace

Measure::Measure(std::vector<double> weights, Tolerance tol) {
  if (weights.empty()) {
    throw NotASimplexPoint("measure must have at least one weight");
  }
  double sum = 0.0;
  for (double w : weights) {
    if (!std::isfinite(w) || w < -tol.eps || w > 1.0 + tol.eps) {
      std::ostringstream os;
      os << "weight " << w << " outside [0,1] in " << format_weights(weights);
      throw NotASimplexPoint(os.str());
    }
    sum += w;
  }
  if (std::abs(sum - 1.0) > tol.eps * static_cast<double>(weights.size())) {
    std::ostringstream os;
    os << "weights sum to " << sum << " (expected 1) in "
       << format_weights(weights);
    throw NotASimplexPoint(os.str());
  }
  for (double& w : weights) {
    w = std::clamp(w, 0.0, 1.0);
  }
  weights_ = std::move(weights);
}

double Measure::max_norm_distance(const Measure& other) const {
  if (other.size() != size()) {
    throw DimensionMismatch("comparing measures of different action counts");
  }
  double d = 0.0;
  for (std::size_t i = 0; i < size(); ++i) {
    d = std::max(d, std::abs(weights_[i] - other.weights_[i]));
  }
  return d;
}

Measure make_measure(std::vector<double> weights, Tolerance tol) {
  return Measure(std::move(weights), tol);
}

std::vector<int> support(const Measure& mu, Tolerance tol) {
  std::vector<int> s;
  for (std::size_t i = 0; i < mu.size(); ++i) {
    if (mu[i] > tol.eps) s.push_back(static_cast<int>(i));
  }
  return s;
}

int herding_choice(const Measure& mu, Tolerance tol) {
  return eps_argmax(mu.weights(), tol.eps).front();
}

std::vector<int> eps_argmax(const std::vector<double>& values, double eps) {
  double best = *std::max_element(values.begin(), values.end());
  std::vector<int> out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] >= best - eps) out.push_back(static_cast<int>(i));
  }
  return out;
}

}  // namespace herdgames
