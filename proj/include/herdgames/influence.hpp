#ifndef HERDGAMES_INFLUENCE_HPP
#define HERDGAMES_INFLUENCE_HPP

#include <utility>
#include <vector>

#include "herdgames/alpha_rne.hpp"

namespace herdgames {

// Designer objective for the influence game. Adoption mode scores the
// composed population measure with per-action weights,
// f = sum_a w_a * (alpha*mu_R_a + (1-alpha)*1{a = i_h}); social mode scores
// its social utility.
struct ObjectiveSpec {
  enum class Mode { AdoptionWeights, SocialUtility };
  Mode mode = Mode::SocialUtility;
  std::vector<double> weights;

  static ObjectiveSpec adoption(std::vector<double> w) {
    return {Mode::AdoptionWeights, std::move(w)};
  }
  static ObjectiveSpec social() { return {Mode::SocialUtility, {}}; }
};

// Stackelberg solution: the optimal herding target, the canonical influence
// (a point mass on it), the unique rational response, and the composed
// population measure with its objective value.
struct InfluenceSolution {
  int i_h_star = 0;
  Measure nu_star;
  Measure mu_r_star;
  Measure mu_star;
  double f_star = 0.0;
};

// The rational-players game conditioned on herding action i_h: utilities are
// evaluated at alpha*nu + (1-alpha)*delta_{i_h}, which is again affine in nu.
GameSpec conditioned_game(const GameSpec& g, int i_h, double alpha);

// Equilibria of the conditioned game (the lower Stackelberg level).
EquilibriumSet lower_level_equilibrium(const GameSpec& g, int i_h, double alpha,
                                       Tolerance tol = {});

struct WellPosedness {
  bool ok = true;
  // (herding action, has a unique lower-level equilibrium)
  std::vector<std::pair<int, bool>> per_action;
};

// The influence game is well posed when every equilibrium-herding choice has
// exactly one lower-level equilibrium.
WellPosedness well_posed(const GameSpec& g, double alpha, HerdingPolicy policy,
                         Tolerance tol = {});

// Maximizes the objective over the equilibrium-herding choices, ties broken
// to the smallest action index. Throws IllPosed or EmptyHerdingSet.
InfluenceSolution design_influence(const GameSpec& g, double alpha,
                                   const ObjectiveSpec& objective,
                                   HerdingPolicy policy, Tolerance tol = {});

}  // namespace herdgames

#endif  // HERDGAMES_INFLUENCE_HPP
