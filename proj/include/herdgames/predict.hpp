#ifndef HERDGAMES_PREDICT_HPP
#define HERDGAMES_PREDICT_HPP

#include <optional>
#include <vector>

#include "herdgames/alpha_rne.hpp"

namespace herdgames {

// The measures consistent with herding on i_h once rational play is confined
// to `surviving`: the polytope {alpha*nu + (1-alpha)*delta_{i_h}} given by its
// vertices (1-alpha)*delta_{i_h} + alpha*delta_j, j in surviving.
struct DominationRegion {
  int herding_action = 0;
  std::vector<Measure> vertices;
};

DominationRegion domination_region(int i_h, double alpha,
                                   const std::vector<int>& surviving, int n,
                                   Tolerance tol = {});

// Is action i strictly worse than action j at every vertex of every
// domination region? Utility differences are affine in mu, so strictness at
// all vertices implies strictness on the whole region.
bool is_dominated(const GameSpec& g, int i, int j, double alpha,
                  const std::vector<int>& herding_set,
                  const std::vector<int>& surviving, Tolerance tol = {});

struct EliminationStep {
  int round = 0;
  int eliminated = 0;
  int dominator = 0;
};

struct PredictionResult {
  std::vector<EliminationStep> trace;
  std::vector<int> surviving;
  std::optional<int> unique_prediction;
};

// Iterated elimination of strictly dominated actions against all
// equilibrium-herding choices. The herding set is computed once from the full
// game and held fixed; each round removes the smallest dominated index.
PredictionResult iterated_prediction(const GameSpec& g, double alpha,
                                     HerdingPolicy policy, Tolerance tol = {});

}  // namespace herdgames

#endif  // HERDGAMES_PREDICT_HPP
