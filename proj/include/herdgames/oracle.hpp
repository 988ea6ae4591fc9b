#ifndef HERDGAMES_ORACLE_HPP
#define HERDGAMES_ORACLE_HPP

#include <functional>
#include <string>
#include <vector>

#include "herdgames/alpha_rne.hpp"

// Brute-force verifier kept deliberately independent of the solver: utility
// evaluation, the equilibrium membership test, and the exact enumeration are
// re-derived here from the defining fixed-point conditions alone, with a
// local elimination routine. Only the measures vocabulary is shared.

namespace herdgames::oracle {

// Black-box utility: action index and a raw weight vector.
using UtilityFn = std::function<double(int, const std::vector<double>&)>;

UtilityFn affine_utility_fn(const GameSpec& g);

// Membership re-check straight from the definition. At alpha = 1 the herding
// action is ignored and the classical fixed point is tested.
bool check_membership(const UtilityFn& u, int n, const std::vector<double>& mu,
                      int herding_action, double alpha, HerdingPolicy policy,
                      double eps, std::string* reason = nullptr);

struct ScanHit {
  std::vector<double> mu;
  std::vector<int> herding;
};

// All points of the augmented simplex grid (denominator `grid`, plus the
// coordinate values 0, alpha, 1-alpha, 1/2, 1/n, 1) passing the eps-relaxed
// membership test, greedily clustered at 1e-3 distance.
std::vector<ScanHit> grid_scan(const UtilityFn& u, int n, double alpha,
                               HerdingPolicy policy, int grid,
                               Tolerance tol = {});
std::vector<ScanHit> grid_scan(const GameSpec& g, double alpha,
                               HerdingPolicy policy, int grid,
                               Tolerance tol = {});

struct MembershipFailure {
  std::vector<double> mu;
  int herding_action = -1;
  std::string reason;
};

struct CompletenessSuspect {
  std::vector<double> mu;
  std::vector<int> herding;
  double distance = 0.0;  // to the nearest claimed point or family
};

struct OracleReport {
  std::vector<MembershipFailure> membership_failures;
  std::vector<CompletenessSuspect> completeness_suspects;
  bool agreement = true;
};

// (a) re-checks every claimed equilibrium from the definition and
// (b) scans the augmented grid for equilibria farther than 1e-3 from every
// claimed point or family.
OracleReport verify_set(const GameSpec& g, double alpha, HerdingPolicy policy,
                        const EquilibriumSet& claimed, int grid,
                        Tolerance tol = {});

// Independent exact enumeration for affine games: solve the equal-utility
// system over every (herding action, rational support) pair in rational-
// measure space and keep the solutions passing the membership conditions.
EquilibriumSet enumerate_alpha_rne(const GameSpec& g, double alpha,
                                   HerdingPolicy policy, Tolerance tol = {});

}  // namespace herdgames::oracle

#endif  // HERDGAMES_ORACLE_HPP
