// Acceptance suite: end-to-end checks of the solver against the closed-form
// equilibrium sets, the utility-comparison guarantees, the efficiency
// numbers, the network-comparison region, prediction, influence design and
// the independent oracle. Prints one PASS/FAIL line per criterion.

#include <algorithm>
#include <cmath>
#include <iostream>
#include <random>
#include <vector>

#include "herdgames/influence.hpp"
#include "herdgames/metrics.hpp"
#include "herdgames/oracle.hpp"
#include "herdgames/predict.hpp"

using namespace herdgames;

namespace {

constexpr HerdingPolicy kStrict = HerdingPolicy::StrictMajority;
constexpr HerdingPolicy kDeclared = HerdingPolicy::DeclaredHerding;

int checks_failed = 0;

void expect(bool ok, const std::string& what) {
  if (!ok) {
    ++checks_failed;
    std::cout << "    check failed: " << what << "\n";
  }
}

bool near(double a, double b, double tol = 1e-9) {
  return std::abs(a - b) <= tol;
}

bool points_equal(const EquilibriumSet& set,
                  std::vector<std::vector<double>> expected, double tol = 1e-9) {
  std::sort(expected.begin(), expected.end());
  expected.erase(std::unique(expected.begin(), expected.end()),
                 expected.end());
  if (!set.families.empty() || set.points.size() != expected.size()) {
    return false;
  }
  for (std::size_t i = 0; i < expected.size(); ++i) {
    for (std::size_t j = 0; j < expected[i].size(); ++j) {
      if (std::abs(set.points[i].mu[j] - expected[i][j]) > tol) return false;
    }
  }
  return true;
}

bool same_sets(const EquilibriumSet& a, const EquilibriumSet& b,
               double tol = 1e-9) {
  if (a.points.size() != b.points.size() ||
      a.families.size() != b.families.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.points.size(); ++i) {
    if (a.points[i].mu.max_norm_distance(b.points[i].mu) > tol) return false;
  }
  return true;
}

GameSpec random_affine_game(std::mt19937& rng, int n) {
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

// Second algebraic route to the equilibrium set: surviving classical
// equilibria plus, for each herding action, the conditioned-game equilibria
// whose rational response avoids that action.
std::vector<std::vector<double>> construction_route(const GameSpec& g,
                                                    double alpha,
                                                    HerdingPolicy policy) {
  std::vector<std::vector<double>> out;
  auto push = [&](const Measure& mu) {
    for (const auto& w : out) {
      double d = 0.0;
      for (std::size_t i = 0; i < w.size(); ++i) {
        d = std::max(d, std::abs(w[i] - mu[i]));
      }
      if (d <= 1e-9) return;
    }
    out.push_back(mu.weights());
  };
  for (const EquilibriumPoint& p : classical_equilibria(g).points) {
    for (int k = 0; k < g.n(); ++k) {
      if (is_alpha_rne(g, p.mu, k, alpha, policy)) {
        push(p.mu);
        break;
      }
    }
  }
  for (int k = 0; k < g.n(); ++k) {
    for (const EquilibriumPoint& p :
         lower_level_equilibrium(g, k, alpha).points) {
      if (p.mu[k] > 1e-9) continue;
      std::vector<double> w(g.n());
      for (int i = 0; i < g.n(); ++i) {
        w[i] = alpha * p.mu[i] + (i == k ? 1.0 - alpha : 0.0);
      }
      const Measure mu(w);
      if (is_alpha_rne(g, mu, k, alpha, policy)) push(mu);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

const std::vector<double> kRhoGrid{0.3, 0.5, 0.8};

struct Criterion1Run {
  GameSpec game;
  double alpha;
  HerdingPolicy policy;
};

std::vector<Criterion1Run> criterion1_runs() {
  std::vector<Criterion1Run> runs;
  for (double rho : kRhoGrid) {
    for (double a : {0.6, 0.8, 1.0}) runs.push_back({braess2(rho), a, kDeclared});
    for (double a : {0.2, 0.4, 0.5}) runs.push_back({braess2(rho), a, kDeclared});
    for (double a : {0.7, 0.9}) runs.push_back({braess3(rho), a, kDeclared});
    for (double a : {0.3, 0.5, 2.0 / 3.0}) {
      runs.push_back({braess3(rho), a, kDeclared});
    }
  }
  runs.push_back({bandwidth(3), 0.3, kDeclared});
  runs.push_back({product_selection(3, 2, 1), 0.5, kDeclared});
  return runs;
}

bool criterion1() {
  const int before = checks_failed;
  for (double rho : kRhoGrid) {
    const GameSpec g2 = braess2(rho);
    for (double a : {0.6, 0.8, 1.0}) {
      expect(points_equal(alpha_rne_set(g2, a, kDeclared), {{0.5, 0.5}}),
             "braess2 classical regime at alpha " + std::to_string(a));
    }
    for (double a : {0.2, 0.4, 0.5}) {
      expect(points_equal(alpha_rne_set(g2, a, kDeclared),
                          {{a, 1.0 - a}, {1.0 - a, a}}),
             "braess2 constructed pair at alpha " + std::to_string(a));
    }
    const GameSpec g3 = braess3(rho);
    for (double a : {0.7, 0.9}) {
      expect(points_equal(alpha_rne_set(g3, a, kDeclared), {{0.0, 0.0, 1.0}}),
             "braess3 classical regime at alpha " + std::to_string(a));
    }
    for (double a : {0.3, 0.5, 2.0 / 3.0}) {
      expect(points_equal(alpha_rne_set(g3, a, kDeclared),
                          {{0.0, 0.0, 1.0},
                           {1.0 - a, 0.0, a},
                           {0.0, 1.0 - a, a}}),
             "braess3 extended set at alpha " + std::to_string(a));
    }
  }
  expect(points_equal(alpha_rne_set(bandwidth(3), 0.3, kDeclared),
                      {{1.0, 0.0, 0.0}, {0.3, 0.7, 0.0}, {0.3, 0.0, 0.7}}),
         "bandwidth set at alpha 0.3");
  expect(points_equal(alpha_rne_set(product_selection(3, 2, 1), 0.5, kDeclared),
                      {{1.0, 0.0, 0.0}, {0.5, 0.5, 0.0}, {0.5, 0.0, 0.5}}),
         "product selection set at alpha 0.5");
  return checks_failed == before;
}

bool criterion2() {
  const int before = checks_failed;
  std::mt19937 rng(12345);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + trial % 3;
    const GameSpec g = random_affine_game(rng, n);
    const EquilibriumSet classical = classical_equilibria(g);
    for (double alpha : {0.2, 0.4, 0.7, 0.9}) {
      const EquilibriumSet solved = alpha_rne_set(g, alpha, kStrict);
      expect(solved.families.empty(),
             "unexpected family in random game trial " + std::to_string(trial));

      std::vector<std::vector<double>> direct;
      for (const EquilibriumPoint& p : solved.points) {
        direct.push_back(p.mu.weights());
      }
      const auto constructed = construction_route(g, alpha, kStrict);
      bool match = direct.size() == constructed.size();
      for (std::size_t i = 0; match && i < direct.size(); ++i) {
        for (std::size_t j = 0; j < direct[i].size(); ++j) {
          if (std::abs(direct[i][j] - constructed[i][j]) > 1e-9) match = false;
        }
      }
      expect(match, "construction route mismatch, trial " +
                        std::to_string(trial) + " alpha " +
                        std::to_string(alpha));

      const EquilibriumSet oracle_set =
          oracle::enumerate_alpha_rne(g, alpha, kStrict);
      expect(same_sets(solved, oracle_set),
             "oracle enumeration mismatch, trial " + std::to_string(trial) +
                 " alpha " + std::to_string(alpha));

      if (alpha > 1.0 - 1.0 / n + 1e-9) {
        expect(same_sets(solved, classical),
               "tail collapse failed, trial " + std::to_string(trial));
      }
    }
  }
  return checks_failed == before;
}

bool criterion3() {
  const int before = checks_failed;
  for (const Criterion1Run& run : criterion1_runs()) {
    const UtilityComparisonReport r = utility_comparison_check(run.game, run.alpha, run.policy);
    expect(r.all_ok, "utility comparison on " + run.game.name() + " at alpha " +
                         std::to_string(run.alpha));
  }
  std::mt19937 rng(12345);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + trial % 3;
    const GameSpec g = random_affine_game(rng, n);
    for (double alpha : {0.2, 0.4, 0.7, 0.9}) {
      const UtilityComparisonReport r = utility_comparison_check(g, alpha, kStrict);
      expect(r.all_ok,
             "utility comparison on random trial " + std::to_string(trial));
    }
  }
  return checks_failed == before;
}

bool criterion4() {
  const int before = checks_failed;
  const PoaPos limit = poa_pos(braess2(0.5), 0.01, kDeclared);
  expect(std::abs(limit.poa - 1.2) < 0.01, "two-route price near its limit");
  expect(near(limit.poa, limit.pos, 1e-12), "two-route PoA equals PoS");

  const PoaPos three = poa_pos(braess3(0.8), 0.9, kDeclared);
  const double expected = 4.0 * 0.8 * 0.8 / (4.0 * 0.8 - 1.0);
  expect(near(three.poa, expected, 1e-6), "three-route PoA at alpha 0.9");
  expect(near(three.pos, expected, 1e-6), "three-route PoS at alpha 0.9");

  for (double alpha : {0.3, 0.1, 0.01}) {
    const PoaPos pp = poa_pos(bandwidth(3), alpha, kDeclared);
    expect(near(pp.poa, 0.0), "bandwidth PoA stays zero");
    expect(pp.pos >= 1.0 - alpha * alpha - 1e-9,
           "bandwidth PoS lower bound at alpha " + std::to_string(alpha));
  }
  return checks_failed == before;
}

bool criterion5() {
  const int before = checks_failed;
  const std::vector<SweepRow> rows =
      braess_sweep(0.0, 1.0, 50, 2.0 / 3.0, 1.0, 50, kDeclared);
  expect(rows.size() == 2500, "sweep grid size");
  for (const SweepRow& row : rows) {
    const GameSpec g3 = braess3(row.rho);
    const GameSpec g2 = braess2(row.rho);
    double best3 = -1e30, worst3 = 1e30;
    for (const EquilibriumPoint& p :
         alpha_rne_set(g3, row.alpha, kDeclared).points) {
      const double v = social_utility(g3, p.mu);
      best3 = std::max(best3, v);
      worst3 = std::min(worst3, v);
    }
    double u2 = 0.0;
    for (const EquilibriumPoint& p :
         alpha_rne_set(g2, row.alpha, kDeclared).points) {
      u2 = social_utility(g2, p.mu);
    }
    const double gb_enum = best3 - u2;
    const double gw_enum = worst3 - u2;
    if (row.sign_b != "boundary") {
      const char* enum_sign = gb_enum < 0.0 ? "paradox" : "improvement";
      expect(row.sign_b == enum_sign,
             "sign mismatch at alpha " + std::to_string(row.alpha) + " rho " +
                 std::to_string(row.rho));
      expect(near(row.g_b, gb_enum, 1e-9),
             "g_b value mismatch at alpha " + std::to_string(row.alpha));
      expect(near(row.g_w, gw_enum, 1e-9),
             "g_w value mismatch at alpha " + std::to_string(row.alpha));
    }
    expect(row.g_w < 0.0, "g_w must be negative on the paradox regime");
    expect(gw_enum < 0.0, "enumerated g_w must be negative");
  }
  return checks_failed == before;
}

bool criterion6() {
  const int before = checks_failed;
  for (double rho : kRhoGrid) {
    const PredictionResult r = iterated_prediction(braess3(rho), 0.5, kDeclared);
    expect(r.unique_prediction && *r.unique_prediction == 2,
           "three-route prediction at rho " + std::to_string(rho));
  }
  const PredictionResult none = iterated_prediction(braess2(0.5), 0.4, kDeclared);
  expect(none.trace.empty() && none.surviving.size() == 2,
         "two-route network admits no elimination");
  const PredictionResult pr =
      iterated_prediction(product_selection(3, 2, 1), 0.5, kDeclared);
  expect(pr.unique_prediction && *pr.unique_prediction == 0,
         "product selection predicts the top product");
  return checks_failed == before;
}

bool criterion7() {
  const int before = checks_failed;
  const InfluenceSolution s = design_influence(
      product_selection(3, 2, 1), 0.5, ObjectiveSpec::adoption({0.0, 1.0, 0.0}),
      kDeclared);
  expect(s.i_h_star == 1, "product influence target");
  expect(near(s.f_star, 0.5), "product influence objective value");
  expect(near(s.mu_star[0], 0.5) && near(s.mu_star[1], 0.5) &&
             near(s.mu_star[2], 0.0),
         "product influence composed measure");

  const GameSpec g3 = braess3(0.8);
  const InfluenceSolution t =
      design_influence(g3, 0.5, ObjectiveSpec::social(), kDeclared);
  expect(near(t.f_star, -1.5), "three-route influence objective value");
  expect(is_alpha_rne(g3, t.mu_star, t.i_h_star, 0.5, kDeclared).ok,
         "three-route influence solution is an equilibrium");
  return checks_failed == before;
}

bool criterion8() {
  const int before = checks_failed;
  const GameSpec g = bandwidth(3);
  const Measure mu({0.3, 0.7, 0.0});
  expect(is_alpha_rne(g, mu, 1, 0.3, kDeclared).ok,
         "witness measure is an equilibrium");
  const AlphaRne eq = make_alpha_rne(g, mu, 1, 0.3, kDeclared);
  const PerTypeUtilities pt = per_type_utilities(g, eq);
  const double star = social_optimum(g).value;
  expect(near(pt.u_rational, 0.35), "rational utility at the witness");
  expect(near(star, 0.25), "social optimum of the bandwidth game");
  expect(pt.u_rational > star + 1e-9, "rationals beat the social optimum");
  return checks_failed == before;
}

bool criterion9() {
  const int before = checks_failed;
  for (const Criterion1Run& run : criterion1_runs()) {
    const EquilibriumSet solved =
        alpha_rne_set(run.game, run.alpha, run.policy);
    const auto hits =
        oracle::grid_scan(run.game, run.alpha, run.policy, 100);
    bool match = hits.size() == solved.points.size();
    for (const EquilibriumPoint& p : solved.points) {
      bool found = false;
      for (const auto& h : hits) {
        double d = 0.0;
        for (std::size_t i = 0; i < h.mu.size(); ++i) {
          d = std::max(d, std::abs(h.mu[i] - p.mu[i]));
        }
        found = found || d <= 1e-6;
      }
      match = match && found;
    }
    expect(match, "grid scan clusters on " + run.game.name() + " at alpha " +
                      std::to_string(run.alpha));
  }

  std::mt19937 rng(777);
  std::uniform_real_distribution<double> scale(0.2, 3.0);
  std::uniform_real_distribution<double> shift(-2.0, 2.0);
  std::vector<GameSpec> games = {braess2(0.5), braess3(0.8), bandwidth(3),
                                 product_selection(3, 2, 1)};
  for (int i = 0; i < 8; ++i) games.push_back(random_affine_game(rng, 3));
  for (const GameSpec& g : games) {
    const double a = scale(rng), c = shift(rng);
    AffineUtility u = g.affine();
    for (double& v : u.b) v = a * v + c;
    for (auto& rowm : u.M) {
      for (double& v : rowm) v *= a;
    }
    const GameSpec rescaled("rescaled", g.labels(), std::move(u));
    for (double alpha : {0.3, 0.6, 1.0}) {
      expect(same_sets(alpha_rne_set(g, alpha, kDeclared),
                       alpha_rne_set(rescaled, alpha, kDeclared)),
             "rescaling invariance on " + g.name());
    }
  }

  for (const GameSpec& g : {braess2(0.5), braess3(0.8), bandwidth(3),
                            product_selection(3, 2, 1)}) {
    for (HerdingPolicy policy : {kStrict, kDeclared}) {
      expect(same_sets(alpha_rne_set(g, 1.0, policy), classical_equilibria(g)),
             "alpha = 1 reduction on " + g.name());
    }
  }
  return checks_failed == before;
}

struct Criterion {
  int number;
  const char* description;
  bool (*run)();
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "closed-form equilibrium sets of the built-in games", criterion1},
      {2, "direct, reconstructed and oracle enumerations agree on 100 random games",
       criterion2},
      {3, "utility comparison guarantees at every equilibrium", criterion3},
      {4, "efficiency numbers (two-route limit, three-route price, bandwidth "
          "bounds)",
       criterion4},
      {5, "network-comparison region: closed forms vs enumerated equilibria",
       criterion5},
      {6, "iterated-dominance predictions", criterion6},
      {7, "influence design solutions", criterion7},
      {8, "rational players can beat the social optimum (bandwidth witness)",
       criterion8},
      {9, "oracle scans, rescaling invariance and the alpha = 1 reduction",
       criterion9},
  };

  int failed = 0;
  for (const Criterion& c : criteria) {
    const bool ok = c.run();
    std::cout << (ok ? "[PASS]" : "[FAIL]") << " criterion " << c.number
              << ": " << c.description << "\n";
    if (!ok) ++failed;
  }
  if (failed != 0) {
    std::cout << failed << " criterion(s) failed\n";
    return 1;
  }
  std::cout << "all " << criteria.size() << " criteria passed\n";
  return 0;
}
