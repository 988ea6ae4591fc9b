#include "herdgames/oracle.hpp"

#include <algorithm>
#include <cmath>

namespace herdgames::oracle {

namespace {

constexpr double kScanEps = 1e-6;     // relaxed membership tolerance for scans
constexpr double kRecheckEps = 1e-7;  // membership re-check of claimed points
constexpr double kClusterDist = 1e-3;

std::vector<double> all_utilities(const UtilityFn& u, int n,
                                  const std::vector<double>& w) {
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) out[i] = u(i, w);
  return out;
}

bool herding_rule_ok(const std::vector<double>& w, int k, double alpha,
                     HerdingPolicy policy, double eps) {
  const double top = *std::max_element(w.begin(), w.end());
  if (policy == HerdingPolicy::StrictMajority) {
    if (w[k] < top - eps) return false;
    for (int i = 0; i < k; ++i) {
      if (w[i] >= top - eps) return false;
    }
    return true;
  }
  if (w[k] >= top - eps) return true;
  const double n = static_cast<double>(w.size());
  return std::abs(w[k] - (1.0 - alpha)) <= eps &&
         alpha <= 1.0 - 1.0 / n + eps;
}

bool fail(std::string* reason, const std::string& msg) {
  if (reason) *reason = msg;
  return false;
}

// L-infinity distance from w to the segment base + t*dir (unit dir),
// using the Euclidean projection parameter.
double segment_distance(const std::vector<double>& w,
                        const std::vector<double>& base,
                        const std::vector<double>& dir, double t_len) {
  double t = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) t += (w[i] - base[i]) * dir[i];
  t = std::clamp(t, 0.0, t_len);
  double d = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    d = std::max(d, std::abs(w[i] - (base[i] + t * dir[i])));
  }
  return d;
}

double linf(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    d = std::max(d, std::abs(a[i] - b[i]));
  }
  return d;
}

// Self-contained Gauss-Jordan elimination with partial pivoting.
struct Elimination {
  enum class Kind { Unique, Inconsistent, Line, Degenerate };
  Kind kind = Kind::Inconsistent;
  std::vector<double> x;
  std::vector<double> dir;
};

Elimination eliminate(std::vector<std::vector<double>> a,
                      std::vector<double> rhs);

// Alternating projections between {Ax = rhs} and {x >= lb}; reports whether
// the two sets intersect. The affine projection solves the normal equations
// (A A^T) z = A x - rhs with the local elimination.
bool affine_meets_box(const std::vector<std::vector<double>>& a,
                      const std::vector<double>& rhs, double lb) {
  const int m = static_cast<int>(rhs.size());
  std::vector<std::vector<double>> gram(m, std::vector<double>(m, 0.0));
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      for (int c = 0; c < m; ++c) gram[i][j] += a[i][c] * a[j][c];
    }
  }
  auto project_affine = [&](std::vector<double> x) {
    std::vector<double> resid(m, 0.0);
    for (int i = 0; i < m; ++i) {
      for (int c = 0; c < m; ++c) resid[i] += a[i][c] * x[c];
      resid[i] -= rhs[i];
    }
    const Elimination z = eliminate(gram, resid);
    for (int c = 0; c < m; ++c) {
      for (int i = 0; i < m; ++i) x[c] -= a[i][c] * z.x[i];
    }
    return x;
  };

  std::vector<double> x = project_affine(std::vector<double>(m, lb));
  for (int iter = 0; iter < 2000; ++iter) {
    std::vector<double> clamped = x;
    for (double& v : clamped) v = std::max(v, lb);
    std::vector<double> next = project_affine(clamped);
    double min_coeff = 1e30, resid = 0.0, step = 0.0;
    for (int i = 0; i < m; ++i) {
      min_coeff = std::min(min_coeff, next[i]);
      step = std::max(step, std::abs(next[i] - x[i]));
      double row = -rhs[i];
      for (int c = 0; c < m; ++c) row += a[i][c] * next[c];
      resid = std::max(resid, std::abs(row));
    }
    if (min_coeff >= lb - 1e-12 &&
        resid <= 1e-9 * (1.0 + std::abs(rhs[m - 1]))) {
      return true;
    }
    if (step < 1e-13) return false;
    x = std::move(next);
  }
  return false;
}

Elimination eliminate(std::vector<std::vector<double>> a,
                      std::vector<double> rhs) {
  const int m = static_cast<int>(rhs.size());
  double scale = 1.0;
  for (const auto& row : a) {
    for (double v : row) scale = std::max(scale, std::abs(v));
  }
  const double pivot_tol = 1e-10 * scale;

  std::vector<int> pivot_col;
  int row = 0;
  for (int col = 0; col < m && row < m; ++col) {
    int best = -1;
    double best_abs = pivot_tol;
    for (int r = row; r < m; ++r) {
      if (std::abs(a[r][col]) > best_abs) {
        best = r;
        best_abs = std::abs(a[r][col]);
      }
    }
    if (best < 0) continue;  // free column
    std::swap(a[row], a[best]);
    std::swap(rhs[row], rhs[best]);
    const double p = a[row][col];
    for (int c = 0; c < m; ++c) a[row][c] /= p;
    rhs[row] /= p;
    for (int r = 0; r < m; ++r) {
      if (r == row || std::abs(a[r][col]) < 1e-300) continue;
      const double f = a[r][col];
      for (int c = 0; c < m; ++c) a[r][c] -= f * a[row][c];
      rhs[r] -= f * rhs[row];
    }
    pivot_col.push_back(col);
    ++row;
  }

  Elimination out;
  const int rank = row;
  for (int r = rank; r < m; ++r) {
    if (std::abs(rhs[r]) > 1e-8 * (1.0 + scale)) {
      out.kind = Elimination::Kind::Inconsistent;
      return out;
    }
  }
  out.x.assign(m, 0.0);
  for (int r = 0; r < rank; ++r) out.x[pivot_col[r]] = rhs[r];
  if (rank == m) {
    out.kind = Elimination::Kind::Unique;
    return out;
  }
  if (rank == m - 1) {
    std::vector<bool> is_pivot(m, false);
    for (int c : pivot_col) is_pivot[c] = true;
    int free_col = 0;
    while (is_pivot[free_col]) ++free_col;
    out.dir.assign(m, 0.0);
    out.dir[free_col] = 1.0;
    for (int r = 0; r < rank; ++r) out.dir[pivot_col[r]] = -a[r][free_col];
    double norm = 0.0;
    for (double v : out.dir) norm += v * v;
    norm = std::sqrt(norm);
    for (double& v : out.dir) v /= norm;
    out.kind = Elimination::Kind::Line;
    return out;
  }
  out.kind = Elimination::Kind::Degenerate;
  return out;
}

}  // namespace

UtilityFn affine_utility_fn(const GameSpec& g) {
  const std::vector<double> b = g.affine().b;
  const std::vector<std::vector<double>> M = g.affine().M;
  return [b, M](int action, const std::vector<double>& w) {
    double v = b[action];
    for (std::size_t j = 0; j < w.size(); ++j) v += M[action][j] * w[j];
    return v;
  };
}

bool check_membership(const UtilityFn& u, int n, const std::vector<double>& mu,
                      int herding_action, double alpha, HerdingPolicy policy,
                      double eps, std::string* reason) {
  const std::vector<double> us = all_utilities(u, n, mu);
  const double umax = *std::max_element(us.begin(), us.end());

  if (alpha >= 1.0 - eps) {
    for (int i = 0; i < n; ++i) {
      if (mu[i] > eps && us[i] < umax - eps) {
        return fail(reason, "support action is not a best response");
      }
    }
    return true;
  }

  const int k = herding_action;
  if (k < 0 || k >= n) return fail(reason, "herding action out of range");
  const double herd_mass = 1.0 - alpha;
  if (mu[k] < herd_mass - eps) {
    return fail(reason, "herding action mass below 1-alpha");
  }

  std::vector<double> rational(n);
  for (int i = 0; i < n; ++i) {
    rational[i] = (i == k ? mu[i] - herd_mass : mu[i]) / alpha;
    if (rational[i] < 0.0) rational[i] = 0.0;
  }
  for (int i = 0; i < n; ++i) {
    if (rational[i] > eps && us[i] < umax - eps) {
      return fail(reason, "rational support action is not a best response");
    }
  }
  for (int i = 0; i < n; ++i) {
    const double composed = alpha * rational[i] + (i == k ? herd_mass : 0.0);
    if (std::abs(mu[i] - composed) > 2.0 * eps) {
      return fail(reason, "composition identity fails");
    }
  }
  if (!herding_rule_ok(mu, k, alpha, policy, eps)) {
    return fail(reason, "herding-consistency rule rejects the action");
  }
  return true;
}

std::vector<ScanHit> grid_scan(const UtilityFn& u, int n, double alpha,
                               HerdingPolicy policy, int grid, Tolerance tol) {
  if (grid < 1) throw InvalidParams("grid must be positive");
  std::vector<double> values;
  values.reserve(grid + 5);
  for (int j = 0; j <= grid; ++j) {
    values.push_back(static_cast<double>(j) / grid);
  }
  for (double v : {alpha, 1.0 - alpha, 0.5, 1.0 / n}) {
    if (v >= 0.0 && v <= 1.0) values.push_back(v);
  }
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end(),
                           [](double a, double b) { return b - a < 1e-12; }),
               values.end());

  std::vector<ScanHit> clusters;
  std::vector<double> point(n, 0.0);
  auto test_point = [&]() {
    std::vector<int> ks;
    if (alpha >= 1.0 - tol.eps) {
      if (!check_membership(u, n, point, 0, alpha, policy, kScanEps)) return;
    } else {
      for (int k = 0; k < n; ++k) {
        if (check_membership(u, n, point, k, alpha, policy, kScanEps)) {
          ks.push_back(k);
        }
      }
      if (ks.empty()) return;
    }
    for (ScanHit& c : clusters) {
      if (linf(c.mu, point) <= kClusterDist) {
        for (int k : ks) {
          if (std::find(c.herding.begin(), c.herding.end(), k) ==
              c.herding.end()) {
            c.herding.push_back(k);
          }
        }
        std::sort(c.herding.begin(), c.herding.end());
        return;
      }
    }
    clusters.push_back({point, std::move(ks)});
  };

  auto recurse = [&](auto&& self, int idx, double remaining) -> void {
    if (idx == n - 1) {
      auto lo = std::lower_bound(values.begin(), values.end(),
                                 remaining - 1e-9);
      for (auto it = lo; it != values.end() && *it <= remaining + 1e-9; ++it) {
        point[idx] = *it;
        test_point();
      }
      return;
    }
    for (double v : values) {
      if (v > remaining + 1e-9) break;
      point[idx] = v;
      self(self, idx + 1, remaining - v);
    }
  };
  recurse(recurse, 0, 1.0);
  return clusters;
}

std::vector<ScanHit> grid_scan(const GameSpec& g, double alpha,
                               HerdingPolicy policy, int grid, Tolerance tol) {
  return grid_scan(affine_utility_fn(g), g.n(), alpha, policy, grid, tol);
}

OracleReport verify_set(const GameSpec& g, double alpha, HerdingPolicy policy,
                        const EquilibriumSet& claimed, int grid,
                        Tolerance tol) {
  if (grid < 50) throw InvalidParams("verification grid must be at least 50");
  const UtilityFn u = affine_utility_fn(g);
  const int n = g.n();
  OracleReport report;

  auto recheck = [&](const std::vector<double>& w,
                     const std::vector<int>& ks) {
    if (ks.empty()) {
      std::string reason;
      if (alpha < 1.0 - tol.eps) {
        report.membership_failures.push_back(
            {w, -1, "no herding action recorded"});
      } else if (!check_membership(u, n, w, 0, alpha, policy, kRecheckEps,
                                   &reason)) {
        report.membership_failures.push_back({w, -1, reason});
      }
      return;
    }
    for (int k : ks) {
      std::string reason;
      if (!check_membership(u, n, w, k, alpha, policy, kRecheckEps, &reason)) {
        report.membership_failures.push_back({w, k, reason});
      }
    }
  };

  for (const EquilibriumPoint& p : claimed.points) {
    recheck(p.mu.weights(), p.herding);
  }
  for (const EquilibriumFamily& f : claimed.families) {
    for (double t : {0.0, 0.5 * f.t_len, f.t_len}) {
      recheck(f.at(t, tol).weights(), f.herding);
    }
  }

  for (const ScanHit& hit : grid_scan(u, n, alpha, policy, grid, tol)) {
    double dist = std::numeric_limits<double>::infinity();
    for (const EquilibriumPoint& p : claimed.points) {
      dist = std::min(dist, linf(hit.mu, p.mu.weights()));
    }
    for (const EquilibriumFamily& f : claimed.families) {
      dist = std::min(dist, segment_distance(hit.mu, f.base.weights(),
                                             f.direction, f.t_len));
    }
    if (dist > kClusterDist) {
      report.completeness_suspects.push_back({hit.mu, hit.herding, dist});
    }
  }

  report.agreement = report.membership_failures.empty() &&
                     report.completeness_suspects.empty();
  return report;
}

EquilibriumSet enumerate_alpha_rne(const GameSpec& g, double alpha,
                                   HerdingPolicy policy, Tolerance tol) {
  if (!(alpha > tol.eps) || alpha > 1.0 + tol.eps) {
    throw InvalidParams("alpha must lie in (0,1]");
  }
  const int n = g.n();
  const UtilityFn u = affine_utility_fn(g);
  const std::vector<double>& b = g.affine().b;
  const std::vector<std::vector<double>>& M = g.affine().M;
  const bool classical_only = alpha >= 1.0 - tol.eps;
  const double herd_mass = classical_only ? 0.0 : 1.0 - alpha;
  const double eps = tol.eps;

  struct RawPoint {
    std::vector<double> w;
    std::vector<int> ks;
  };
  std::vector<RawPoint> points;
  std::vector<EquilibriumFamily> families;

  auto add_point = [&](const std::vector<double>& w, int k) {
    for (RawPoint& p : points) {
      if (linf(p.w, w) <= eps) {
        if (k >= 0 && std::find(p.ks.begin(), p.ks.end(), k) == p.ks.end()) {
          p.ks.push_back(k);
          std::sort(p.ks.begin(), p.ks.end());
        }
        return;
      }
    }
    points.push_back({w, k >= 0 ? std::vector<int>{k} : std::vector<int>{}});
  };

  // Compose the population measure from the rational measure and herding mass.
  auto compose = [&](const std::vector<int>& t, const std::vector<double>& y,
                     int k) {
    std::vector<double> w(n, 0.0);
    for (std::size_t j = 0; j < t.size(); ++j) {
      w[t[j]] += (classical_only ? 1.0 : alpha) * y[j];
    }
    if (!classical_only) w[k] += herd_mass;
    return w;
  };

  auto best_response_ok = [&](const std::vector<int>& t,
                              const std::vector<double>& w) {
    const std::vector<double> us = all_utilities(u, n, w);
    const double umax = *std::max_element(us.begin(), us.end());
    for (int i : t) {
      if (us[i] < umax - eps) return false;
    }
    return true;
  };

  auto solve_cell = [&](const std::vector<int>& t, int k) {
    const int m = static_cast<int>(t.size());
    const double mass_scale = classical_only ? 1.0 : alpha;
    std::vector<std::vector<double>> A(m, std::vector<double>(m, 0.0));
    std::vector<double> rhs(m, 0.0);
    for (int r = 0; r + 1 < m; ++r) {
      const int i = t[r + 1], i0 = t[0];
      for (int c = 0; c < m; ++c) {
        A[r][c] = mass_scale * (M[i][t[c]] - M[i0][t[c]]);
      }
      rhs[r] = -(b[i] - b[i0]);
      if (!classical_only) rhs[r] -= herd_mass * (M[i][k] - M[i0][k]);
    }
    for (int c = 0; c < m; ++c) A[m - 1][c] = 1.0;
    rhs[m - 1] = 1.0;

    const Elimination sol = eliminate(A, rhs);
    switch (sol.kind) {
      case Elimination::Kind::Inconsistent:
        return;
      case Elimination::Kind::Unique: {
        for (double y : sol.x) {
          if (y <= eps) return;
        }
        const std::vector<double> w = compose(t, sol.x, k);
        if (!best_response_ok(t, w)) return;
        if (!classical_only && !herding_rule_ok(w, k, alpha, policy, eps)) {
          return;
        }
        add_point(w, classical_only ? -1 : k);
        return;
      }
      case Elimination::Kind::Line: {
        // One-parameter solution set: clip to nonnegative rational mass and
        // best responses, then split where the herding rule flips.
        const std::vector<double> base = compose(t, sol.x, k);
        std::vector<double> dir(n, 0.0);
        for (int j = 0; j < m; ++j) dir[t[j]] = mass_scale * sol.dir[j];
        double norm = 0.0;
        for (double v : dir) norm += v * v;
        norm = std::sqrt(norm);
        for (double& v : dir) v /= norm;

        double lo = -1e30, hi = 1e30;
        auto clip = [&](double a0, double c) {
          if (std::abs(c) <= 1e-12) {
            if (a0 < -1e-12) lo = 1.0, hi = 0.0;
            return;
          }
          const double tt = -a0 / c;
          if (c > 0.0) {
            lo = std::max(lo, tt);
          } else {
            hi = std::min(hi, tt);
          }
        };
        for (int i : t) clip(base[i], dir[i]);
        const std::vector<double> us0 = all_utilities(u, n, base);
        std::vector<double> slope(n, 0.0);
        for (int i = 0; i < n; ++i) {
          for (int j = 0; j < n; ++j) slope[i] += M[i][j] * dir[j];
        }
        for (int a = 0; a < n; ++a) {
          if (std::find(t.begin(), t.end(), a) != t.end()) continue;
          clip(us0[t[0]] - us0[a] + eps, slope[t[0]] - slope[a]);
        }
        if (lo > hi + 1e-12) return;

        std::vector<double> cuts{lo, hi};
        for (int i = 0; i < n; ++i) {
          for (int j = i + 1; j < n; ++j) {
            if (std::abs(dir[i] - dir[j]) > 1e-14) {
              cuts.push_back((base[j] - base[i]) / (dir[i] - dir[j]));
            }
          }
          if (std::abs(dir[i]) > 1e-14) {
            cuts.push_back((herd_mass - base[i]) / dir[i]);
          }
        }
        std::sort(cuts.begin(), cuts.end());
        for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
          double a0 = std::max(cuts[c], lo), b0 = std::min(cuts[c + 1], hi);
          if (b0 - a0 < 1e-12) continue;
          const double tm = 0.5 * (a0 + b0);
          std::vector<double> wm(n);
          for (int i = 0; i < n; ++i) wm[i] = base[i] + tm * dir[i];
          if (!classical_only &&
              !herding_rule_ok(wm, k, alpha, policy, eps)) {
            continue;
          }
          if (b0 - a0 <= eps) {
            add_point(wm, classical_only ? -1 : k);
            continue;
          }
          std::vector<double> start(n);
          std::vector<double> d = dir;
          int lead = 0;
          while (lead < n && std::abs(d[lead]) <= 1e-12) ++lead;
          if (lead < n && d[lead] < 0.0) {
            for (double& v : d) v = -v;
            for (int i = 0; i < n; ++i) start[i] = base[i] + b0 * dir[i];
          } else {
            for (int i = 0; i < n; ++i) start[i] = base[i] + a0 * dir[i];
          }
          for (double& v : start) {
            if (v < 0.0 && v > -eps) v = 0.0;
          }
          families.push_back(EquilibriumFamily{
              Measure(start, tol), d, b0 - a0,
              classical_only ? std::vector<int>{} : std::vector<int>{k}});
        }
        return;
      }
      case Elimination::Kind::Degenerate:
        if (affine_meets_box(A, rhs, 2.0 * eps)) {
          throw DegenerateGame(
              "oracle enumeration hit an equilibrium continuum of "
              "dimension >= 2");
        }
        return;
    }
  };

  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    std::vector<int> t;
    for (int i = 0; i < n; ++i) {
      if (mask & (1u << i)) t.push_back(i);
    }
    if (classical_only) {
      solve_cell(t, -1);
    } else {
      for (int k = 0; k < n; ++k) solve_cell(t, k);
    }
  }

  EquilibriumSet out;
  for (RawPoint& p : points) {
    bool on_family = false;
    for (const EquilibriumFamily& f : families) {
      if (segment_distance(p.w, f.base.weights(), f.direction, f.t_len) <= eps) {
        on_family = true;
        break;
      }
    }
    if (on_family) continue;
    for (double& v : p.w) {
      if (v < 0.0 && v > -eps) v = 0.0;
    }
    out.points.push_back({Measure(p.w, tol), std::move(p.ks)});
  }
  std::sort(out.points.begin(), out.points.end(),
            [](const EquilibriumPoint& x, const EquilibriumPoint& y) {
              return std::lexicographical_compare(
                  x.mu.weights().begin(), x.mu.weights().end(),
                  y.mu.weights().begin(), y.mu.weights().end());
            });
  out.families = std::move(families);
  std::sort(out.families.begin(), out.families.end(),
            [](const EquilibriumFamily& x, const EquilibriumFamily& y) {
              return std::lexicographical_compare(
                  x.base.weights().begin(), x.base.weights().end(),
                  y.base.weights().begin(), y.base.weights().end());
            });
  return out;
}

}  // namespace herdgames::oracle
