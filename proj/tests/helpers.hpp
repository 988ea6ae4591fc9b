#ifndef HERDGAMES_TESTS_HELPERS_HPP
#define HERDGAMES_TESTS_HELPERS_HPP

#include <algorithm>
#include <random>
#include <vector>

#include "doctest.h"
#include "herdgames/alpha_rne.hpp"

namespace ht {

using namespace herdgames;

inline void check_measure(const Measure& mu, const std::vector<double>& expected,
                          double tol = 1e-9) {
  REQUIRE(mu.size() == expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i) {
    CHECK(mu[i] == doctest::Approx(expected[i]).epsilon(0).scale(1).epsilon(tol));
  }
}

// Asserts the set consists of exactly these isolated points (any order).
inline void check_points(const EquilibriumSet& set,
                         std::vector<std::vector<double>> expected,
                         double tol = 1e-9) {
  CHECK(set.families.empty());
  REQUIRE(set.points.size() == expected.size());
  std::sort(expected.begin(), expected.end());
  for (std::size_t i = 0; i < expected.size(); ++i) {
    const Measure& mu = set.points[i].mu;
    REQUIRE(mu.size() == expected[i].size());
    for (std::size_t j = 0; j < expected[i].size(); ++j) {
      CHECK(mu[j] == doctest::Approx(expected[i][j]).epsilon(0).scale(1).epsilon(tol));
    }
  }
}

inline bool same_point_sets(const EquilibriumSet& a, const EquilibriumSet& b,
                            double tol = 1e-9) {
  if (a.points.size() != b.points.size()) return false;
  if (a.families.size() != b.families.size()) return false;
  for (std::size_t i = 0; i < a.points.size(); ++i) {
    if (a.points[i].mu.max_norm_distance(b.points[i].mu) > tol) return false;
  }
  for (std::size_t i = 0; i < a.families.size(); ++i) {
    const auto& fa = a.families[i];
    const auto& fb = b.families[i];
    if (fa.base.max_norm_distance(fb.base) > 1e-7) return false;
    if (std::abs(fa.t_len - fb.t_len) > 1e-7) return false;
    for (std::size_t j = 0; j < fa.direction.size(); ++j) {
      if (std::abs(fa.direction[j] - fb.direction[j]) > 1e-7) return false;
    }
  }
  return true;
}

inline GameSpec random_affine_game(std::mt19937& rng, int n) {
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  AffineUtility u;
  u.b.resize(n);
  u.M.assign(n, std::vector<double>(n));
  for (int i = 0; i < n; ++i) {
    u.b[i] = coef(rng);
    for (int j = 0; j < n; ++j) u.M[i][j] = coef(rng);
  }
  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i) labels.push_back("a" + std::to_string(i + 1));
  return GameSpec("random", std::move(labels), std::move(u));
}

inline Measure random_measure(std::mt19937& rng, int n) {
  std::exponential_distribution<double> e(1.0);
  std::vector<double> w(n);
  double sum = 0.0;
  for (double& x : w) {
    x = e(rng) + 1e-12;
    sum += x;
  }
  for (double& x : w) x /= sum;
  // renormalize exactly enough for validation
  double s2 = 0.0;
  for (double x : w) s2 += x;
  w[0] += 1.0 - s2;
  return Measure(w);
}

}  // namespace ht

#endif  // HERDGAMES_TESTS_HELPERS_HPP
