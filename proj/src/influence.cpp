#include "herdgames/influence.hpp"

#include <cmath>
#include <sstream>

#include "herdgames/metrics.hpp"

namespace herdgames {

GameSpec conditioned_game(const GameSpec& g, int i_h, double alpha) {
  if (i_h < 0 || i_h >= g.n()) {
    throw DimensionMismatch("herding action out of range");
  }
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw InvalidParams("conditioning requires alpha in (0,1)");
  }
  const AffineUtility& u = g.affine();
  AffineUtility cu;
  cu.b.resize(g.n());
  cu.M.assign(g.n(), std::vector<double>(g.n()));
  for (int i = 0; i < g.n(); ++i) {
    cu.b[i] = u.b[i] + (1.0 - alpha) * u.M[i][i_h];
    for (int j = 0; j < g.n(); ++j) cu.M[i][j] = alpha * u.M[i][j];
  }
  return GameSpec(g.name() + "|herd=" + g.labels()[i_h], g.labels(),
                  std::move(cu));
}

EquilibriumSet lower_level_equilibrium(const GameSpec& g, int i_h, double alpha,
                                       Tolerance tol) {
  return classical_equilibria(conditioned_game(g, i_h, alpha), tol);
}

WellPosedness well_posed(const GameSpec& g, double alpha, HerdingPolicy policy,
                         Tolerance tol) {
  WellPosedness out;
  for (int i_h : herding_choice_set(g, alpha, policy, tol)) {
    const EquilibriumSet lower = lower_level_equilibrium(g, i_h, alpha, tol);
    const bool unique = lower.points.size() == 1 && lower.families.empty();
    out.ok = out.ok && unique;
    out.per_action.emplace_back(i_h, unique);
  }
  return out;
}

InfluenceSolution design_influence(const GameSpec& g, double alpha,
                                   const ObjectiveSpec& objective,
                                   HerdingPolicy policy, Tolerance tol) {
  if (objective.mode == ObjectiveSpec::Mode::AdoptionWeights &&
      static_cast<int>(objective.weights.size()) != g.n()) {
    throw DimensionMismatch("adoption weights must have one entry per action");
  }
  const std::vector<int> herding_set =
      herding_choice_set(g, alpha, policy, tol);
  if (herding_set.empty()) {
    throw EmptyHerdingSet("no equilibrium-herding choice exists at this alpha");
  }
  const WellPosedness wp = well_posed(g, alpha, policy, tol);
  if (!wp.ok) {
    std::ostringstream os;
    os << "lower-level equilibrium is not unique for herding action(s):";
    for (const auto& [a, unique] : wp.per_action) {
      if (!unique) os << ' ' << g.labels()[a];
    }
    throw IllPosed(os.str());
  }

  bool have = false;
  InfluenceSolution best{0, Measure({1.0}), Measure({1.0}), Measure({1.0}), 0.0};
  for (int i_h : herding_set) {
    const Measure mu_r =
        lower_level_equilibrium(g, i_h, alpha, tol).points.front().mu;
    std::vector<double> composed(g.n());
    for (int i = 0; i < g.n(); ++i) {
      composed[i] = alpha * mu_r[i] + (i == i_h ? 1.0 - alpha : 0.0);
    }
    Measure mu(std::move(composed), tol);
    double f = 0.0;
    if (objective.mode == ObjectiveSpec::Mode::AdoptionWeights) {
      for (int i = 0; i < g.n(); ++i) f += objective.weights[i] * mu[i];
    } else {
      f = social_utility(g, mu);
    }
    if (!have || f > best.f_star + tol.eps) {  // ties keep the smallest index
      std::vector<double> point_mass(g.n(), 0.0);
      point_mass[i_h] = 1.0;
      best = InfluenceSolution{i_h, Measure(std::move(point_mass), tol), mu_r,
                               std::move(mu), f};
      have = true;
    }
  }
  return best;
}

}  // namespace herdgames
