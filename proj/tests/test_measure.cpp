#include "helpers.hpp"

using namespace ht;

TEST_CASE("make_measure validates simplex points") {
  CHECK(make_measure({0.5, 0.5}).size() == 2);
  const Measure vertex = make_measure({1.0, 0.0, 0.0});
  CHECK(vertex[0] == 1.0);
  CHECK_THROWS_AS(make_measure({0.3, 0.9}), NotASimplexPoint);
  CHECK_THROWS_AS(make_measure({1.2, -0.2}), NotASimplexPoint);
  CHECK_THROWS_AS(make_measure({}), NotASimplexPoint);

  // values inside the tolerance band are accepted and clamped
  const Measure m = make_measure({1.0 + 5e-10, -5e-10});
  CHECK(m[0] == 1.0);
  CHECK(m[1] == 0.0);
}

TEST_CASE("support") {
  CHECK(support(make_measure({0.5, 0.5, 0.0})) == std::vector<int>{0, 1});
  CHECK(support(make_measure({1.0, 0.0})) == std::vector<int>{0});
  CHECK(support(make_measure({0.3, 0.7, 0.0})) == std::vector<int>{0, 1});
}

TEST_CASE("herding choice is the min-index eps-argmax") {
  CHECK(herding_choice(make_measure({0.2, 0.8})) == 1);
  CHECK(herding_choice(make_measure({0.5, 0.5})) == 0);
  CHECK(herding_choice(make_measure({1.0 / 3, 1.0 / 3, 1.0 / 3})) == 0);
  CHECK(herding_choice(make_measure({0.3, 0.4, 0.3})) == 1);
}

TEST_CASE("herding choice properties on random measures") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 4);
    Measure mu = random_measure(rng, n);
    if (trial % 3 == 0) {
      // force a tie to exercise the min-index rule
      std::vector<double> w = mu.weights();
      const int i = static_cast<int>(rng() % n);
      int j = static_cast<int>(rng() % n);
      if (i != j) {
        const double avg = 0.5 * (w[i] + w[j]);
        w[i] = w[j] = avg;
        mu = make_measure(w);
      }
    }

    const std::vector<int> sup = support(mu);
    CHECK_FALSE(sup.empty());
    const int hc = herding_choice(mu);
    CHECK(std::find(sup.begin(), sup.end(), hc) != sup.end());

    // permutation covariance: relabeling maps the choice to the min-index
    // element of the permuted argmax set
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<double> pw(n);
    for (int i = 0; i < n; ++i) pw[perm[i]] = mu[i];
    const Measure pmu = make_measure(pw);

    const std::vector<int> arg = eps_argmax(mu.weights(), 1e-9);
    int expected = n;
    for (int i : arg) expected = std::min(expected, perm[i]);
    CHECK(herding_choice(pmu) == expected);
  }
}
