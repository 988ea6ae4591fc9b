#ifndef HERDGAMES_CLASSICAL_HPP
#define HERDGAMES_CLASSICAL_HPP

#include <vector>

#include "herdgames/game.hpp"
#include "herdgames/measure.hpp"

namespace herdgames {

// An isolated equilibrium. herding lists the actions under which the point is
// a valid herding choice (empty for classical equilibria, where no herding
// population exists).
struct EquilibriumPoint {
  Measure mu;
  std::vector<int> herding;
};

// A one-parameter continuum of equilibria: mu(t) = base + t * direction for
// t in [0, t_len]. direction has unit Euclidean norm, sums to zero, and its
// first nonzero component is positive; both endpoints are equilibria.
struct EquilibriumFamily {
  Measure base;
  std::vector<double> direction;
  double t_len = 0.0;
  std::vector<int> herding;

  Measure at(double t, Tolerance tol = {}) const;
};

// Deduplicated equilibria: isolated points (pairwise max-norm distance > eps)
// plus, rarely, one-parameter families. Points lying on a family segment are
// folded into the family.
struct EquilibriumSet {
  std::vector<EquilibriumPoint> points;
  std::vector<EquilibriumFamily> families;

  bool empty() const { return points.empty() && families.empty(); }
};

struct SocialOptimum {
  Measure argmax;
  double value = 0.0;
};

// Definition check for a classical mean-field equilibrium:
// support(mu) is contained in the eps-argmax of u(., mu).
bool is_classical_ne(const GameSpec& g, const Measure& mu, Tolerance tol = {});

// Exact enumeration of classical equilibria (alpha = 1) by exhaustive support
// enumeration: for every support S solve the linear system
// {h_ij(mu) = 0 for i,j in S, sum_S mu_i = 1, mu_i = 0 off S}, keep interior
// solutions whose support actions are best responses. Nullity-1 systems
// become families; nullity >= 2 raises DegenerateGame.
EquilibriumSet classical_equilibria(const GameSpec& g, Tolerance tol = {});

// Exact maximization of the social utility u_s(mu) = sum_i mu_i u(i, mu) over
// the simplex by face enumeration of the quadratic's stationary points plus
// all vertices.
SocialOptimum social_optimum(const GameSpec& g, Tolerance tol = {});

}  // namespace herdgames

#endif  // HERDGAMES_CLASSICAL_HPP
