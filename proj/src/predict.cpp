#include "herdgames/predict.hpp"

#include <algorithm>
#include <numeric>

namespace herdgames {

DominationRegion domination_region(int i_h, double alpha,
                                   const std::vector<int>& surviving, int n,
                                   Tolerance tol) {
  if (i_h < 0 || i_h >= n) throw DimensionMismatch("herding action out of range");
  DominationRegion region;
  region.herding_action = i_h;
  for (int j : surviving) {
    std::vector<double> w(n, 0.0);
    w[i_h] += 1.0 - alpha;
    w[j] += alpha;
    region.vertices.emplace_back(std::move(w), tol);
  }
  return region;
}

bool is_dominated(const GameSpec& g, int i, int j, double alpha,
                  const std::vector<int>& herding_set,
                  const std::vector<int>& surviving, Tolerance tol) {
  if (i == j) return false;
  for (int i_h : herding_set) {
    const DominationRegion region =
        domination_region(i_h, alpha, surviving, g.n(), tol);
    for (const Measure& v : region.vertices) {
      if (utility(g, i, v) >= utility(g, j, v) - tol.eps) return false;
    }
  }
  return true;
}

PredictionResult iterated_prediction(const GameSpec& g, double alpha,
                                     HerdingPolicy policy, Tolerance tol) {
  const std::vector<int> herding_set = herding_choice_set(g, alpha, policy, tol);

  PredictionResult result;
  result.surviving.resize(g.n());
  std::iota(result.surviving.begin(), result.surviving.end(), 0);

  int round = 1;
  for (;;) {
    int eliminated = -1, dominator = -1;
    for (int i : result.surviving) {
      for (int j : result.surviving) {
        if (j != i && is_dominated(g, i, j, alpha, herding_set,
                                   result.surviving, tol)) {
          eliminated = i;
          dominator = j;
          break;
        }
      }
      if (eliminated >= 0) break;  // smallest dominated index this round
    }
    if (eliminated < 0 || result.surviving.size() == 1) break;
    result.trace.push_back({round++, eliminated, dominator});
    result.surviving.erase(std::remove(result.surviving.begin(),
                                       result.surviving.end(), eliminated),
                           result.surviving.end());
  }
  if (result.surviving.size() == 1) {
    result.unique_prediction = result.surviving.front();
  }
  return result;
}

}  // namespace herdgames
