#ifndef HERDGAMES_METRICS_HPP
#define HERDGAMES_METRICS_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "herdgames/alpha_rne.hpp"

namespace herdgames {

// Mass-weighted average utility u_s(mu) = sum_i mu_i u(i, mu).
double social_utility(const GameSpec& g, const Measure& mu);

struct PoaPos {
  double poa = 1.0;
  double pos = 1.0;
};

// Worst/best equilibrium social utility over the alpha-RNE set, each divided
// by the social optimum. Families are optimized exactly along their segment.
// With the negative-of-cost convention, cost games yield PoA >= PoS >= 1 and
// payoff games PoA <= PoS <= 1. Throws UndefinedRatio when the social optimum
// is zero.
PoaPos poa_pos(const GameSpec& g, double alpha, HerdingPolicy policy,
               Tolerance tol = {});

struct PerTypeUtilities {
  double u_rational = 0.0;
  double u_herding = 0.0;
};

// Expected utility of a typical rational player (the best-response value at
// mu) and of a typical herding player (the utility of the herding action).
PerTypeUtilities per_type_utilities(const GameSpec& g, const AlphaRne& eq);

// One row of the utility-comparison report: for equilibrium (mu, k), rational
// players weakly beat herding players and herding players never beat the
// social optimum; when mu is also a classical equilibrium the two types tie
// and neither exceeds the social optimum.
struct UtilityComparisonClaim {
  Measure mu;
  int herding_action = 0;
  double u_rational = 0.0;
  double u_herding = 0.0;
  bool classical = false;
  bool herding_le_rational = false;
  bool herding_le_optimum = false;
  bool classical_claims_ok = false;  // vacuously true when !classical

  bool ok() const {
    return herding_le_rational && herding_le_optimum && classical_claims_ok;
  }
};

struct UtilityComparisonReport {
  double u_s_star = 0.0;
  std::vector<UtilityComparisonClaim> claims;
  bool all_ok = true;
};

// Any violation here indicates a solver bug, not a property of the game.
UtilityComparisonReport utility_comparison_check(const GameSpec& g, double alpha,
                              HerdingPolicy policy, Tolerance tol = {});

struct MetricsReport {
  double u_s_star = 0.0;
  double poa = 1.0;
  double pos = 1.0;
  EquilibriumSet equilibria;
  std::vector<double> social_values;              // u_s per equilibrium point
  std::vector<PerTypeUtilities> per_equilibrium;  // aligned with comparisons claims
  UtilityComparisonReport comparisons;
};

MetricsReport metrics_report(const GameSpec& g, double alpha,
                             HerdingPolicy policy, Tolerance tol = {});

// Social-utility gaps between the three-route and the two-route congestion
// network at the best (g_b) and worst (g_w) equilibria, with
// alpha_bar = (1-rho)/rho the crossover between the regimes.
struct BraessComparison {
  double g_b = 0.0;
  double g_w = 0.0;
  double alpha_bar = 0.0;
  std::string piece_b;
  std::string piece_w;
};

BraessComparison braess_comparison(double alpha, double rho);

// One grid cell of the Braess comparison sweep. sign_b is "paradox" when the
// extra route hurts even the best equilibrium, "improvement" when it helps,
// and "boundary" when the cell sits on a piecewise breakpoint.
struct SweepRow {
  double alpha = 0.0;
  double rho = 0.0;
  double g_b = 0.0;
  double g_w = 0.0;
  std::string sign_b;
  double poa = 1.0;
  double pos = 1.0;
};

// Half-open grid over (alpha, rho); each cell is evaluated at its center.
// poa/pos columns refer to the three-route network at the cell parameters.
std::vector<SweepRow> braess_sweep(double alpha_lo, double alpha_hi,
                                   int alpha_count, double rho_lo,
                                   double rho_hi, int rho_count,
                                   HerdingPolicy policy, Tolerance tol = {});

// CSV with header alpha,rho,g_b,g_w,sign_b,poa,pos; LF line endings,
// 12 significant digits.
void write_sweep_csv(const std::vector<SweepRow>& rows, std::ostream& out);

}  // namespace herdgames

#endif  // HERDGAMES_METRICS_HPP
