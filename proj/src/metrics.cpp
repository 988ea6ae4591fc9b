#include "herdgames/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

#include "format.hpp"
#include "set_builder.hpp"

namespace herdgames {

namespace {

void check_alpha_range(double alpha, Tolerance tol) {
  if (!(alpha > tol.eps) || alpha > 1.0 + tol.eps) {
    std::ostringstream os;
    os << "alpha must lie in (0,1], got " << alpha;
    throw InvalidParams(os.str());
  }
}

// Quadratic coefficients of t -> u_s(base + t*dir): a*t^2 + l*t + c.
struct FamilyQuadratic {
  double a = 0.0, l = 0.0, c = 0.0;

  double at(double t) const { return (a * t + l) * t + c; }
};

FamilyQuadratic social_along(const GameSpec& g, const std::vector<double>& base,
                             const std::vector<double>& dir) {
  const AffineUtility& u = g.affine();
  const int n = g.n();
  FamilyQuadratic q;
  q.c = detail::social_utility_raw(g, base);
  for (int i = 0; i < n; ++i) {
    q.l += u.b[i] * dir[i];
    for (int j = 0; j < n; ++j) {
      q.a += dir[i] * u.M[i][j] * dir[j];
      q.l += dir[i] * u.M[i][j] * base[j] + base[i] * u.M[i][j] * dir[j];
    }
  }
  return q;
}

struct Range {
  double lo, hi;
};

Range social_range_over_family(const GameSpec& g, const EquilibriumFamily& f) {
  const FamilyQuadratic q = social_along(g, f.base.weights(), f.direction);
  double lo = std::min(q.at(0.0), q.at(f.t_len));
  double hi = std::max(q.at(0.0), q.at(f.t_len));
  if (std::abs(q.a) > 1e-14) {
    const double t_star = -q.l / (2.0 * q.a);
    if (t_star > 0.0 && t_star < f.t_len) {
      const double v = q.at(t_star);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  return {lo, hi};
}

}  // namespace

double social_utility(const GameSpec& g, const Measure& mu) {
  if (static_cast<int>(mu.size()) != g.n()) {
    throw DimensionMismatch("measure size does not match action count");
  }
  return detail::social_utility_raw(g, mu.weights());
}

PoaPos poa_pos(const GameSpec& g, double alpha, HerdingPolicy policy,
               Tolerance tol) {
  check_alpha_range(alpha, tol);
  const double star = social_optimum(g, tol).value;
  if (std::abs(star) <= tol.eps) {
    std::ostringstream os;
    os << "social optimum is " << star << "; PoA/PoS are undefined";
    throw UndefinedRatio(os.str());
  }

  const EquilibriumSet set = alpha_rne_set(g, alpha, policy, tol);
  if (set.empty()) {
    throw DegenerateGame("no equilibria found; cannot form PoA/PoS");
  }
  double inf_us = 0.0, sup_us = 0.0;
  bool first = true;
  auto widen = [&](double lo, double hi) {
    inf_us = first ? lo : std::min(inf_us, lo);
    sup_us = first ? hi : std::max(sup_us, hi);
    first = false;
  };
  for (const EquilibriumPoint& p : set.points) {
    const double v = social_utility(g, p.mu);
    widen(v, v);
  }
  for (const EquilibriumFamily& f : set.families) {
    const Range r = social_range_over_family(g, f);
    widen(r.lo, r.hi);
  }
  return {inf_us / star, sup_us / star};
}

PerTypeUtilities per_type_utilities(const GameSpec& g, const AlphaRne& eq) {
  const std::vector<double> us = utilities(g, eq.mu);
  const double u_r = *std::max_element(us.begin(), us.end());
  const double u_h = eq.herding_action ? us[*eq.herding_action] : u_r;
  return {u_r, u_h};
}

UtilityComparisonReport utility_comparison_check(const GameSpec& g, double alpha,
                              HerdingPolicy policy, Tolerance tol) {
  check_alpha_range(alpha, tol);
  UtilityComparisonReport report;
  report.u_s_star = social_optimum(g, tol).value;

  const EquilibriumSet set = alpha_rne_set(g, alpha, policy, tol);

  auto add_claim = [&](const Measure& mu, int k) {
    const std::vector<double> us = utilities(g, mu);
    UtilityComparisonClaim c{mu, k, *std::max_element(us.begin(), us.end()), us[k]};
    c.classical = is_classical_ne(g, mu, tol);
    c.herding_le_rational = c.u_herding <= c.u_rational + tol.eps;
    c.herding_le_optimum = c.u_herding <= report.u_s_star + tol.eps;
    c.classical_claims_ok =
        !c.classical ||
        (std::abs(c.u_rational - c.u_herding) <= tol.eps &&
         report.u_s_star >= c.u_rational - tol.eps);
    report.all_ok = report.all_ok && c.ok();
    report.claims.push_back(std::move(c));
  };

  for (const EquilibriumPoint& p : set.points) {
    // At alpha = 1 there are no herding players; the herding choice itself
    // stands in so the classical equality claims are still exercised.
    if (p.herding.empty()) {
      add_claim(p.mu, herding_choice(p.mu, tol));
    } else {
      for (int k : p.herding) add_claim(p.mu, k);
    }
  }
  for (const EquilibriumFamily& f : set.families) {
    for (double t : {0.0, 0.5 * f.t_len, f.t_len}) {
      const Measure mu = f.at(t, tol);
      if (f.herding.empty()) {
        add_claim(mu, herding_choice(mu, tol));
      } else {
        for (int k : f.herding) add_claim(mu, k);
      }
    }
  }
  return report;
}

MetricsReport metrics_report(const GameSpec& g, double alpha,
                             HerdingPolicy policy, Tolerance tol) {
  MetricsReport r;
  r.comparisons = utility_comparison_check(g, alpha, policy, tol);
  r.u_s_star = r.comparisons.u_s_star;
  const PoaPos pp = poa_pos(g, alpha, policy, tol);
  r.poa = pp.poa;
  r.pos = pp.pos;
  r.equilibria = alpha_rne_set(g, alpha, policy, tol);
  for (const EquilibriumPoint& p : r.equilibria.points) {
    r.social_values.push_back(social_utility(g, p.mu));
  }
  for (const UtilityComparisonClaim& c : r.comparisons.claims) {
    r.per_equilibrium.push_back({c.u_rational, c.u_herding});
  }
  return r;
}

BraessComparison braess_comparison(double alpha, double rho) {
  if (!(alpha > 0.0) || alpha > 1.0) {
    throw InvalidParams("braess comparison requires alpha in (0,1]");
  }
  if (!(rho > 0.0 && rho < 1.0)) {
    throw InvalidParams("braess comparison requires rho in (0,1)");
  }
  BraessComparison out;
  out.alpha_bar = (1.0 - rho) / rho;

  // Equilibrium social utilities from the closed-form equilibrium sets:
  // the three-route network attains -2*rho at (0,0,1) and q3 at the two
  // constructed equilibria (alpha <= 2/3 only); the two-route network is
  // unique-valued in both regimes.
  const double q3 = -rho * alpha * alpha + alpha - rho - 1.0;
  const double u2 = alpha <= 0.5
                        ? -1.0 - rho + 2.0 * rho * alpha - 2.0 * rho * alpha * alpha
                        : -1.0 - 0.5 * rho;

  double ub3, uw3;
  if (alpha > 2.0 / 3.0) {
    ub3 = uw3 = -2.0 * rho;
    out.piece_b = "1-3rho/2";
    out.piece_w = "1-3rho/2";
  } else {
    ub3 = std::max(-2.0 * rho, q3);
    uw3 = std::min(-2.0 * rho, q3);
    const bool best_is_new = q3 >= -2.0 * rho;  // alpha >= alpha_bar
    if (alpha > 0.5) {
      out.piece_b = best_is_new ? "-rho*alpha^2-rho/2+alpha" : "1-3rho/2";
      out.piece_w = best_is_new ? "1-3rho/2" : "-rho*alpha^2-rho/2+alpha";
    } else {
      out.piece_b = best_is_new ? "rho*alpha^2-2rho*alpha+alpha"
                                : "1-rho-2rho*alpha+2rho*alpha^2";
      out.piece_w = best_is_new ? "1-rho-2rho*alpha+2rho*alpha^2"
                                : "rho*alpha^2+alpha-2rho*alpha";
    }
  }
  out.g_b = ub3 - u2;
  out.g_w = uw3 - u2;
  return out;
}

std::vector<SweepRow> braess_sweep(double alpha_lo, double alpha_hi,
                                   int alpha_count, double rho_lo,
                                   double rho_hi, int rho_count,
                                   HerdingPolicy policy, Tolerance tol) {
  if (alpha_count < 1 || rho_count < 1) {
    throw InvalidParams("sweep grid counts must be positive");
  }
  if (alpha_lo < 0.0 || alpha_hi > 1.0 || alpha_lo >= alpha_hi) {
    throw InvalidParams("alpha range must lie within [0,1]");
  }
  if (rho_lo < 0.0 || rho_hi > 1.0 || rho_lo >= rho_hi) {
    throw InvalidParams("rho range must lie within [0,1]");
  }
  std::vector<SweepRow> rows;
  rows.reserve(static_cast<std::size_t>(alpha_count) * rho_count);
  const double da = (alpha_hi - alpha_lo) / alpha_count;
  const double dr = (rho_hi - rho_lo) / rho_count;
  for (int ia = 0; ia < alpha_count; ++ia) {
    const double a = alpha_lo + (ia + 0.5) * da;
    for (int ir = 0; ir < rho_count; ++ir) {
      const double r = rho_lo + (ir + 0.5) * dr;
      const BraessComparison bc = braess_comparison(a, r);
      SweepRow row;
      row.alpha = a;
      row.rho = r;
      row.g_b = bc.g_b;
      row.g_w = bc.g_w;
      // g_b is continuous across the piecewise breakpoints, so a sign claim
      // is ambiguous only where the gap itself vanishes.
      row.sign_b = std::abs(bc.g_b) <= tol.eps
                       ? "boundary"
                       : (bc.g_b < 0.0 ? "paradox" : "improvement");
      const PoaPos pp = poa_pos(braess3(r), a, policy, tol);
      row.poa = pp.poa;
      row.pos = pp.pos;
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

void write_sweep_csv(const std::vector<SweepRow>& rows, std::ostream& out) {
  out << "alpha,rho,g_b,g_w,sign_b,poa,pos\n";
  for (const SweepRow& r : rows) {
    out << detail::fmt12(r.alpha) << ',' << detail::fmt12(r.rho) << ','
        << detail::fmt12(r.g_b) << ',' << detail::fmt12(r.g_w) << ','
        << r.sign_b << ',' << detail::fmt12(r.poa) << ','
        << detail::fmt12(r.pos) << '\n';
  }
}

}  // namespace herdgames
