#include <cmath>

#include "helpers.hpp"
#include "herdgames/metrics.hpp"

using namespace ht;

TEST_CASE("classical equilibria of the built-in games") {
  check_points(classical_equilibria(braess2(0.5)), {{0.5, 0.5}});
  check_points(classical_equilibria(braess3(0.8)), {{0.0, 0.0, 1.0}});
  check_points(classical_equilibria(braess3(0.3)), {{0.0, 0.0, 1.0}});
  check_points(classical_equilibria(product_selection(3, 2, 1)),
               {{1.0, 0.0, 0.0}});
  check_points(classical_equilibria(bandwidth(3)), {{1.0, 0.0, 0.0}});
  check_points(classical_equilibria(bandwidth(6)),
               {{1.0, 0.0, 0.0, 0.0, 0.0, 0.0}});
}

TEST_CASE("every returned equilibrium passes the definition re-check") {
  std::mt19937 rng(21);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 3);
    const GameSpec g = random_affine_game(rng, n);
    const EquilibriumSet set = classical_equilibria(g);
    CHECK_FALSE(set.empty());  // finite MFGs always admit an equilibrium
    for (const EquilibriumPoint& p : set.points) {
      CHECK(is_classical_ne(g, p.mu));
    }
    for (const EquilibriumFamily& f : set.families) {
      for (double t : {0.0, 0.5 * f.t_len, f.t_len}) {
        CHECK(is_classical_ne(g, f.at(t)));
      }
    }
  }
}

TEST_CASE("a game with two interchangeable actions yields a family") {
  // actions 1 and 2 have identical utilities, action 3 is strictly worse
  GameSpec g("twin", {"x", "y", "z"},
             {{1.0, 1.0, 0.0},
              {{0.0, 0.0, 0.0}, {0.0, 0.0, 0.0}, {0.0, 0.0, 0.0}}});
  const EquilibriumSet set = classical_equilibria(g);
  CHECK(set.points.empty());
  REQUIRE(set.families.size() == 1);
  const EquilibriumFamily& f = set.families.front();
  double dsum = 0.0;
  for (double d : f.direction) dsum += d;
  CHECK(dsum == doctest::Approx(0.0).epsilon(0).scale(1).epsilon(1e-12));
  CHECK(f.t_len == doctest::Approx(std::sqrt(2.0)));
  CHECK(is_classical_ne(g, f.at(0.0)));
  CHECK(is_classical_ne(g, f.at(f.t_len)));
  CHECK(f.at(0.0).max_norm_distance(make_measure({0.0, 1.0, 0.0})) < 1e-9);
  CHECK(f.at(f.t_len).max_norm_distance(make_measure({1.0, 0.0, 0.0})) < 1e-9);
}

TEST_CASE("three interchangeable actions are degenerate") {
  GameSpec g("triple", {"x", "y", "z"},
             {{1.0, 1.0, 1.0},
              {{0.0, 0.0, 0.0}, {0.0, 0.0, 0.0}, {0.0, 0.0, 0.0}}});
  CHECK_THROWS_AS(classical_equilibria(g), DegenerateGame);
}

TEST_CASE("social optimum of the built-in games") {
  const SocialOptimum b2 = social_optimum(braess2(0.5));
  CHECK(b2.value == doctest::Approx(-1.25));
  check_measure(b2.argmax, {0.5, 0.5});

  const SocialOptimum bw = social_optimum(bandwidth(3));
  CHECK(bw.value == doctest::Approx(0.25));
  check_measure(bw.argmax, {0.0, 1.0, 0.0});

  const SocialOptimum b3 = social_optimum(braess3(0.8));
  CHECK(b3.value == doctest::Approx(-1.375));

  // the optimum value is (1-4rho)/(2rho) once rho exceeds 1/2, else -2rho
  for (double rho : {0.55, 0.6, 0.7, 0.9}) {
    CHECK(social_optimum(braess3(rho)).value ==
          doctest::Approx((1.0 - 4.0 * rho) / (2.0 * rho)));
  }
  for (double rho : {0.3, 0.4, 0.5}) {
    CHECK(social_optimum(braess3(rho)).value == doctest::Approx(-2.0 * rho));
  }
}

TEST_CASE("social optimum argmax regime split on braess3") {
  for (double rho : {0.3, 0.45, 0.5}) {
    const SocialOptimum opt = social_optimum(braess3(rho));
    CHECK(opt.argmax.max_norm_distance(make_measure({0.0, 0.0, 1.0})) < 1e-9);
  }
  for (double rho : {0.55, 0.8}) {
    const SocialOptimum opt = social_optimum(braess3(rho));
    CHECK(opt.argmax.max_norm_distance(make_measure({0.0, 0.0, 1.0})) > 1e-3);
  }
}

TEST_CASE("social optimum dominates Monte Carlo samples") {
  std::mt19937 rng(5);
  for (const GameSpec& g :
       {braess2(0.5), braess3(0.8), bandwidth(3), bandwidth(4),
        product_selection(3, 2, 1)}) {
    const double star = social_optimum(g).value;
    for (int i = 0; i < 10000; ++i) {
      const Measure mu = random_measure(rng, g.n());
      CHECK(social_utility(g, mu) <= star + 1e-9);
    }
  }
}

TEST_CASE("social optimum on random games dominates samples") {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 3);
    const GameSpec g = random_affine_game(rng, n);
    const double star = social_optimum(g).value;
    for (int i = 0; i < 400; ++i) {
      CHECK(social_utility(g, random_measure(rng, n)) <= star + 1e-9);
    }
  }
}
