#include "herdgames/alpha_rne.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "faces.hpp"
#include "linear.hpp"
#include "set_builder.hpp"

namespace herdgames {

namespace {

using detail::FaceSolve;

void check_alpha(double alpha, Tolerance tol) {
  if (!(alpha > tol.eps) || alpha > 1.0 + tol.eps) {
    std::ostringstream os;
    os << "alpha must lie in (0,1], got " << alpha;
    throw InvalidParams(os.str());
  }
}

Measure measure_from_raw(std::vector<double> w, Tolerance tol) {
  for (double& x : w) {
    if (x < 0.0 && x > -tol.eps) x = 0.0;
  }
  return Measure(std::move(w), tol);
}

// Herding-action validity pattern along a line segment. The pattern is
// constant between crossings of population masses with each other and with
// the 1-alpha threshold, so it is sampled at segment midpoints.
struct LineSegment {
  double t_lo, t_hi;
  std::vector<int> herding;
};

std::vector<LineSegment> subdivide_line(const GameSpec& g,
                                        const std::vector<double>& base,
                                        const std::vector<double>& dir,
                                        double t_lo, double t_hi, double alpha,
                                        HerdingPolicy policy, Tolerance tol) {
  const int n = g.n();
  std::vector<double> cuts{t_lo, t_hi};
  auto add_root = [&](double a, double c) {
    if (std::abs(c) < 1e-14) return;
    const double t = -a / c;
    if (t > t_lo + 1e-12 && t < t_hi - 1e-12) cuts.push_back(t);
  };
  for (int i = 0; i < n; ++i) {
    add_root(base[i] - (1.0 - alpha), dir[i]);
    for (int j = i + 1; j < n; ++j) {
      add_root(base[i] - base[j], dir[i] - dir[j]);
    }
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end(),
                         [](double a, double b) { return b - a < 1e-12; }),
             cuts.end());

  std::vector<LineSegment> segs;
  for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
    const double a = cuts[c], b = cuts[c + 1];
    const Measure mu =
        measure_from_raw(detail::line_point(base, dir, 0.5 * (a + b)), tol);
    std::vector<int> ks;
    for (int k = 0; k < n; ++k) {
      if (is_alpha_rne(g, mu, k, alpha, policy, tol)) ks.push_back(k);
    }
    if (!segs.empty() && segs.back().herding == ks &&
        std::abs(segs.back().t_hi - a) < 1e-12) {
      segs.back().t_hi = b;
    } else {
      segs.push_back({a, b, std::move(ks)});
    }
  }
  return segs;
}

void emit_segment(detail::SetBuilder& builder, const std::vector<double>& base,
                  const std::vector<double>& dir, const LineSegment& seg,
                  Tolerance tol) {
  if (seg.herding.empty()) return;
  if (seg.t_hi - seg.t_lo <= tol.eps) {
    builder.add_point(
        measure_from_raw(
            detail::line_point(base, dir, 0.5 * (seg.t_lo + seg.t_hi)), tol),
        seg.herding);
  } else {
    builder.add_family(base, dir, seg.t_lo, seg.t_hi, seg.herding, tol);
  }
}

std::vector<int> valid_herding_actions(const GameSpec& g, const Measure& mu,
                                       double alpha, HerdingPolicy policy,
                                       Tolerance tol) {
  std::vector<int> ks;
  for (int k = 0; k < g.n(); ++k) {
    if (is_alpha_rne(g, mu, k, alpha, policy, tol)) ks.push_back(k);
  }
  return ks;
}

// Equilibria constructed by pinning exactly 1-alpha mass on a herding action
// k and solving the equal-utility system over every rational support
// excluding k.
void enumerate_constructed(const GameSpec& g, double alpha, HerdingPolicy policy,
                       Tolerance tol, detail::SetBuilder& builder) {
  const int n = g.n();
  const AffineUtility& u = g.affine();
  const double herd_mass = 1.0 - alpha;

  for (int k = 0; k < n; ++k) {
    std::vector<double> fixed_contrib(n);
    for (int i = 0; i < n; ++i) fixed_contrib[i] = u.M[i][k] * herd_mass;

    for (unsigned mask = 1; mask < (1u << n); ++mask) {
      if (mask & (1u << k)) continue;
      const std::vector<int> s = detail::mask_indices(mask, n);
      const auto m = s.size();

      Eigen::MatrixXd A;
      Eigen::VectorXd rhs;
      detail::equal_utility_system(g, s, alpha, fixed_contrib, A, rhs);
      const FaceSolve sol = detail::solve_face_system(A, rhs);

      switch (sol.kind) {
        case FaceSolve::Kind::Inconsistent:
          break;
        case FaceSolve::Kind::Unique: {
          bool interior = true;
          for (double x : sol.x) interior = interior && x > tol.eps;
          if (!interior) break;
          std::vector<double> w(n, 0.0);
          w[k] = herd_mass;
          for (std::size_t j = 0; j < m; ++j) w[s[j]] = sol.x[j];
          Measure mu(std::move(w), tol);
          if (!detail::face_actions_are_best(g, s, mu, tol.eps)) break;
          if (!is_alpha_rne(g, mu, k, alpha, policy, tol)) break;
          builder.add_point(mu, valid_herding_actions(g, mu, alpha, policy, tol));
          break;
        }
        case FaceSolve::Kind::Line: {
          std::vector<double> base(n, 0.0), dir(n, 0.0);
          base[k] = herd_mass;
          for (std::size_t j = 0; j < m; ++j) {
            base[s[j]] = sol.x[j];
            dir[s[j]] = sol.kernel[0][j];
          }
          detail::Interval iv;
          for (int i : s) iv.clip(base[i], dir[i]);
          const double u0 = detail::eval_utility_raw(g, s[0], base);
          double slope0 = 0.0;
          for (int j = 0; j < n; ++j) slope0 += u.M[s[0]][j] * dir[j];
          for (int a = 0; a < n; ++a) {
            if (mask & (1u << a)) continue;
            double slope_a = 0.0;
            for (int j = 0; j < n; ++j) slope_a += u.M[a][j] * dir[j];
            iv.clip(u0 - detail::eval_utility_raw(g, a, base) + tol.eps,
                    slope0 - slope_a);
          }
          if (iv.empty()) break;
          for (const LineSegment& seg :
               subdivide_line(g, base, dir, iv.lo, iv.hi, alpha, policy, tol)) {
            emit_segment(builder, base, dir, seg, tol);
          }
          break;
        }
        case FaceSolve::Kind::Degenerate:
          if (detail::affine_set_meets_box(A, rhs, 2.0 * tol.eps)) {
            throw DegenerateGame("herding action " + g.labels()[k] +
                                 " with rational support " +
                                 detail::face_name(g, s) +
                                 " carries an equilibrium continuum of "
                                 "dimension >= 2");
          }
          break;
      }
    }
  }
}

}  // namespace

Measure rational_measure(const Measure& mu, int k, double alpha, Tolerance tol) {
  check_alpha(alpha, tol);
  const int n = static_cast<int>(mu.size());
  if (k < 0 || k >= n) throw DimensionMismatch("herding action out of range");
  const double herd_mass = 1.0 - alpha;
  if (mu[k] < herd_mass - tol.eps) {
    std::ostringstream os;
    os << "herding action holds mass " << mu[k] << " < 1-alpha = " << herd_mass;
    throw HerdingMassTooSmall(os.str());
  }
  std::vector<double> w(n);
  for (int i = 0; i < n; ++i) {
    w[i] = i == k ? (mu[i] - herd_mass) / alpha : mu[i] / alpha;
    if (w[i] < 0.0 && w[i] > -(tol.eps / alpha + tol.eps)) w[i] = 0.0;
    if (w[i] > 1.0 && w[i] < 1.0 + tol.eps / alpha + tol.eps) w[i] = 1.0;
  }
  return Measure(std::move(w), tol);
}

bool herding_consistent(const Measure& mu, int k, double alpha,
                        HerdingPolicy policy, Tolerance tol) {
  const std::vector<int> top = eps_argmax(mu.weights(), tol.eps);
  if (policy == HerdingPolicy::StrictMajority) {
    return k == top.front();
  }
  if (std::find(top.begin(), top.end(), k) != top.end()) return true;
  const double n = static_cast<double>(mu.size());
  return std::abs(mu[k] - (1.0 - alpha)) <= tol.eps &&
         alpha <= 1.0 - 1.0 / n + tol.eps;
}

Membership is_alpha_rne(const GameSpec& g, const Measure& mu, int k,
                        double alpha, HerdingPolicy policy, Tolerance tol) {
  check_alpha(alpha, tol);
  if (static_cast<int>(mu.size()) != g.n()) {
    throw DimensionMismatch("measure size does not match action count");
  }
  if (k < 0 || k >= g.n()) {
    throw DimensionMismatch("herding action out of range");
  }

  Measure mu_r = mu;
  try {
    mu_r = rational_measure(mu, k, alpha, tol);
  } catch (const HerdingMassTooSmall& e) {
    return {false, e.what()};
  }

  const std::vector<double> us = utilities(g, mu);
  const std::vector<int> best = eps_argmax(us, tol.eps);
  for (int i : support(mu_r, tol)) {
    if (std::find(best.begin(), best.end(), i) == best.end()) {
      return {false, "rational support contains non-best-response action " +
                         g.labels()[i]};
    }
  }

  for (int i = 0; i < g.n(); ++i) {
    const double composed =
        alpha * mu_r[i] + (i == k ? 1.0 - alpha : 0.0);
    if (std::abs(mu[i] - composed) > 2.0 * tol.eps) {
      return {false, "composition identity fails at action " + g.labels()[i]};
    }
  }

  if (!herding_consistent(mu, k, alpha, policy, tol)) {
    return {false, "policy rejects herding action " + g.labels()[k]};
  }
  return {true, ""};
}

AlphaRne make_alpha_rne(const GameSpec& g, const Measure& mu, int k,
                        double alpha, HerdingPolicy policy, Tolerance tol) {
  const Membership m = is_alpha_rne(g, mu, k, alpha, policy, tol);
  if (!m.ok) throw InvalidParams("not an alpha-RNE: " + m.reason);
  return AlphaRne{mu, k, rational_measure(mu, k, alpha, tol), alpha, policy};
}

EquilibriumSet alpha_rne_set(const GameSpec& g, double alpha,
                             HerdingPolicy policy, Tolerance tol) {
  check_alpha(alpha, tol);
  const EquilibriumSet classical = classical_equilibria(g, tol);
  if (alpha >= 1.0 - tol.eps) return classical;

  detail::SetBuilder builder(tol.eps);
  for (const EquilibriumPoint& p : classical.points) {
    const std::vector<int> ks =
        valid_herding_actions(g, p.mu, alpha, policy, tol);
    if (!ks.empty()) builder.add_point(p.mu, ks);
  }
  for (const EquilibriumFamily& f : classical.families) {
    for (const LineSegment& seg :
         subdivide_line(g, f.base.weights(), f.direction, 0.0, f.t_len, alpha,
                        policy, tol)) {
      emit_segment(builder, f.base.weights(), f.direction, seg, tol);
    }
  }
  enumerate_constructed(g, alpha, policy, tol, builder);
  return builder.build();
}

AlphaRneDecomposition alpha_rne_decomposition(const GameSpec& g, double alpha,
                                              HerdingPolicy policy,
                                              Tolerance tol) {
  check_alpha(alpha, tol);
  const EquilibriumSet classical = classical_equilibria(g, tol);
  AlphaRneDecomposition out;

  detail::SetBuilder removed(tol.eps);
  const double herd_mass = 1.0 - alpha;
  for (const EquilibriumPoint& p : classical.points) {
    const double top = *std::max_element(p.mu.weights().begin(),
                                         p.mu.weights().end());
    if (top < herd_mass - tol.eps) removed.add_point(p.mu);
  }
  for (const EquilibriumFamily& f : classical.families) {
    for (const LineSegment& seg :
         subdivide_line(g, f.base.weights(), f.direction, 0.0, f.t_len, alpha,
                        HerdingPolicy::DeclaredHerding, tol)) {
      const Measure mid = measure_from_raw(
          detail::line_point(f.base.weights(), f.direction,
                             0.5 * (seg.t_lo + seg.t_hi)),
          tol);
      const double top = *std::max_element(mid.weights().begin(),
                                           mid.weights().end());
      if (top < herd_mass - tol.eps) {
        LineSegment s{seg.t_lo, seg.t_hi, {}};
        if (s.t_hi - s.t_lo <= tol.eps) {
          removed.add_point(mid);
        } else {
          removed.add_family(f.base.weights(), f.direction, s.t_lo, s.t_hi, {},
                             tol);
        }
      }
    }
  }
  out.removed_classical = removed.build();

  detail::SetBuilder builder(tol.eps);
  enumerate_constructed(g, alpha, policy, tol, builder);
  out.constructed = builder.build();
  return out;
}

std::vector<int> herding_choice_set(const GameSpec& g, double alpha,
                                    HerdingPolicy policy, Tolerance tol) {
  check_alpha(alpha, tol);
  if (alpha >= 1.0 - tol.eps) {
    throw InvalidParams("the herding choice set requires alpha < 1");
  }
  const EquilibriumSet set = alpha_rne_set(g, alpha, policy, tol);
  std::vector<int> out;
  for (const EquilibriumPoint& p : set.points) {
    detail::merge_sorted_actions(out, p.herding);
  }
  for (const EquilibriumFamily& f : set.families) {
    detail::merge_sorted_actions(out, f.herding);
  }
  return out;
}

}  // namespace herdgames
