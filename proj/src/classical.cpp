#include "herdgames/classical.hpp"

#include <cmath>

#include "faces.hpp"
#include "linear.hpp"
#include "set_builder.hpp"

namespace herdgames {

using detail::FaceSolve;
using detail::face_actions_are_best;
using detail::face_name;
using detail::mask_indices;

Measure EquilibriumFamily::at(double t, Tolerance tol) const {
  std::vector<double> w = detail::line_point(base.weights(), direction, t);
  for (double& x : w) {
    if (x < 0.0 && x > -tol.eps) x = 0.0;
  }
  return Measure(std::move(w), tol);
}

bool is_classical_ne(const GameSpec& g, const Measure& mu, Tolerance tol) {
  const std::vector<double> us = utilities(g, mu);
  const std::vector<int> best = eps_argmax(us, tol.eps);
  for (int i : support(mu, tol)) {
    if (std::find(best.begin(), best.end(), i) == best.end()) return false;
  }
  return true;
}

EquilibriumSet classical_equilibria(const GameSpec& g, Tolerance tol) {
  const int n = g.n();
  const AffineUtility& u = g.affine();
  const std::vector<double> no_fixed(n, 0.0);
  detail::SetBuilder builder(tol.eps);

  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    const std::vector<int> s = mask_indices(mask, n);
    const auto m = s.size();

    if (m == 1) {
      std::vector<double> w(n, 0.0);
      w[s[0]] = 1.0;
      Measure mu(std::move(w), tol);
      if (face_actions_are_best(g, s, mu, tol.eps)) builder.add_point(mu);
      continue;
    }

    Eigen::MatrixXd A;
    Eigen::VectorXd rhs;
    detail::equal_utility_system(g, s, 1.0, no_fixed, A, rhs);
    const FaceSolve sol = detail::solve_face_system(A, rhs);

    switch (sol.kind) {
      case FaceSolve::Kind::Inconsistent:
        break;
      case FaceSolve::Kind::Unique: {
        bool interior = true;
        for (double x : sol.x) interior = interior && x > tol.eps;
        if (!interior) break;
        std::vector<double> w(n, 0.0);
        for (std::size_t j = 0; j < m; ++j) w[s[j]] = sol.x[j];
        Measure mu(std::move(w), tol);
        if (face_actions_are_best(g, s, mu, tol.eps)) builder.add_point(mu);
        break;
      }
      case FaceSolve::Kind::Line: {
        std::vector<double> base(n, 0.0), dir(n, 0.0);
        for (std::size_t j = 0; j < m; ++j) {
          base[s[j]] = sol.x[j];
          dir[s[j]] = sol.kernel[0][j];
        }
        detail::Interval iv;
        for (int i : s) iv.clip(base[i], dir[i]);
        // Utilities are equal across S along the whole line; only actions
        // outside S can break the best-response condition.
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
        if (iv.hi - iv.lo <= tol.eps) {
          const std::vector<double> w =
              detail::line_point(base, dir, 0.5 * (iv.lo + iv.hi));
          bool interior = true;
          for (int i : s) interior = interior && w[i] > tol.eps;
          if (interior) {
            Measure mu(w, tol);
            if (face_actions_are_best(g, s, mu, tol.eps)) builder.add_point(mu);
          }
          break;
        }
        builder.add_family(base, dir, iv.lo, iv.hi, {}, tol);
        break;
      }
      case FaceSolve::Kind::Degenerate:
        // A >= 2-dimensional solution set is only an equilibrium continuum if
        // it actually enters the face.
        if (detail::affine_set_meets_box(A, rhs, 2.0 * tol.eps)) {
          throw DegenerateGame("support " + face_name(g, s) +
                               " carries an equilibrium continuum of "
                               "dimension >= 2");
        }
        break;
    }
  }
  return builder.build();
}

SocialOptimum social_optimum(const GameSpec& g, Tolerance tol) {
  const int n = g.n();
  const AffineUtility& u = g.affine();

  bool have_best = false;
  SocialOptimum best{Measure(std::vector<double>(1, 1.0)), 0.0};
  auto consider = [&](Measure mu) {
    const double v = detail::social_utility_raw(g, mu.weights());
    if (!have_best || v > best.value) {
      best = SocialOptimum{std::move(mu), v};
      have_best = true;
    }
  };

  for (int i = 0; i < n; ++i) {
    std::vector<double> w(n, 0.0);
    w[i] = 1.0;
    consider(Measure(std::move(w), tol));
  }

  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    const std::vector<int> s = mask_indices(mask, n);
    const auto m = s.size();
    if (m < 2) continue;

    // Stationarity of the restricted quadratic: gradient equal across S via a
    // multiplier, plus unit mass. Unknowns are mu on S and the multiplier.
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(m + 1, m + 1);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m + 1);
    for (std::size_t r = 0; r < m; ++r) {
      for (std::size_t c = 0; c < m; ++c) {
        A(r, c) = u.M[s[r]][s[c]] + u.M[s[c]][s[r]];
      }
      A(r, m) = -1.0;
      rhs(r) = -u.b[s[r]];
    }
    for (std::size_t c = 0; c < m; ++c) A(m, c) = 1.0;
    rhs(m) = 1.0;

    const FaceSolve sol = detail::solve_face_system(A, rhs);
    if (sol.kind == FaceSolve::Kind::Inconsistent) continue;

    std::vector<double> w(n, 0.0);
    for (std::size_t j = 0; j < m; ++j) w[s[j]] = sol.x[j];

    if (sol.kind == FaceSolve::Kind::Unique) {
      bool feasible = true;
      for (int i : s) feasible = feasible && w[i] >= -tol.eps;
      if (!feasible) continue;
      for (double& x : w) {
        if (x < 0.0) x = 0.0;
      }
      consider(Measure(std::move(w), tol));
      continue;
    }

    // Rank-deficient stationarity system: every solution attains the same
    // value, and boundary solutions reappear as critical points of sub-faces,
    // so the face can be skipped once constancy is confirmed.
    const double v0 = detail::social_utility_raw(g, w);
    for (const auto& dirs : sol.kernel) {
      std::vector<double> w1 = w;
      for (std::size_t j = 0; j < m; ++j) w1[s[j]] += dirs[j];
      if (std::abs(detail::social_utility_raw(g, w1) - v0) >
          1e-7 * (1.0 + std::abs(v0))) {
        throw DegenerateGame("social utility non-constant on the degenerate "
                             "stationary set of face " + face_name(g, s));
      }
    }
  }
  return best;
}

}  // namespace herdgames
