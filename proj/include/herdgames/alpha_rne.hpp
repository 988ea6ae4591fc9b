#ifndef HERDGAMES_ALPHA_RNE_HPP
#define HERDGAMES_ALPHA_RNE_HPP

#include <optional>
#include <string>
#include <vector>

#include "herdgames/classical.hpp"
#include "herdgames/game.hpp"

namespace herdgames {

// Consistency rule tying the herding action k to the population measure.
//
// StrictMajority is the literal rule: k must be the smallest index attaining
// the maximum population mass. DeclaredHerding additionally lets the herding
// crowd occupy any eps-argmax action, or follow itself on an action holding
// exactly the 1-alpha herding mass, the latter only while alpha <= 1 - 1/n.
// DeclaredHerding reproduces the closed-form equilibrium sets of all built-in
// games over the full alpha range; StrictMajority does not for
// alpha in (1/2, 1 - 1/n].
enum class HerdingPolicy { StrictMajority, DeclaredHerding };

// An equilibrium record for the mixed population: the population measure, the
// herding action (absent only at alpha = 1), the recovered rational measure
// mu_R, and the policy under which the record is valid.
struct AlphaRne {
  Measure mu;
  std::optional<int> herding_action;
  Measure mu_r;
  double alpha = 1.0;
  HerdingPolicy policy = HerdingPolicy::DeclaredHerding;
};

struct Membership {
  bool ok = false;
  std::string reason;
  explicit operator bool() const { return ok; }
};

// The rational measure determined by (mu, k): mu_R_i = mu_i / alpha for
// i != k and mu_R_k = (mu_k - (1-alpha)) / alpha. Throws HerdingMassTooSmall
// when mu_k < 1 - alpha - eps.
Measure rational_measure(const Measure& mu, int k, double alpha,
                         Tolerance tol = {});

// Does the herding-consistency rule of `policy` accept herding action k
// at measure mu?
bool herding_consistent(const Measure& mu, int k, double alpha,
                        HerdingPolicy policy, Tolerance tol = {});

// Membership test: (mu, k) is an alpha-RNE iff the rational measure exists,
// its support best-responds to mu, the composition
// mu = alpha*mu_R + (1-alpha)*delta_k holds, and the policy accepts k.
Membership is_alpha_rne(const GameSpec& g, const Measure& mu, int k,
                        double alpha, HerdingPolicy policy, Tolerance tol = {});

// Builds the full record; throws InvalidParams if (mu, k) is not a member.
AlphaRne make_alpha_rne(const GameSpec& g, const Measure& mu, int k,
                        double alpha, HerdingPolicy policy, Tolerance tol = {});

// Complete alpha-RNE set. At alpha = 1 this is classical_equilibria; for
// alpha < 1 it is the classical set minus the measures where every action
// holds less than 1-alpha mass, united with the constructed equilibria that
// pin exactly 1-alpha mass on a herding action. Every point and family
// carries all herding actions valid under `policy`.
EquilibriumSet alpha_rne_set(const GameSpec& g, double alpha,
                             HerdingPolicy policy, Tolerance tol = {});

// The decomposition behind alpha_rne_set: classical equilibria destroyed by
// the herding mass threshold, and the newly constructed equilibria.
struct AlphaRneDecomposition {
  EquilibriumSet removed_classical;
  EquilibriumSet constructed;
};

AlphaRneDecomposition alpha_rne_decomposition(const GameSpec& g, double alpha,
                                HerdingPolicy policy, Tolerance tol = {});

// Actions that are the herding choice at some alpha-RNE, ascending.
std::vector<int> herding_choice_set(const GameSpec& g, double alpha,
                                    HerdingPolicy policy, Tolerance tol = {});

}  // namespace herdgames

#endif  // HERDGAMES_ALPHA_RNE_HPP
