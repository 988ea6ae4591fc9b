#ifndef HERDGAMES_SRC_SET_BUILDER_HPP
#define HERDGAMES_SRC_SET_BUILDER_HPP

// Internal helpers shared by the equilibrium enumeration paths: raw affine
// evaluation, interval clipping for affine constraints along a line, and
// deterministic assembly of EquilibriumSet values.

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "herdgames/classical.hpp"

namespace herdgames::detail {

inline double eval_utility_raw(const GameSpec& g, int action,
                               const std::vector<double>& w) {
  const AffineUtility& u = g.affine();
  double v = u.b[action];
  for (int j = 0; j < g.n(); ++j) v += u.M[action][j] * w[j];
  return v;
}

inline double social_utility_raw(const GameSpec& g,
                                 const std::vector<double>& w) {
  double s = 0.0;
  for (int i = 0; i < g.n(); ++i) s += w[i] * eval_utility_raw(g, i, w);
  return s;
}

// Running intersection of affine constraints a + t*c >= 0.
struct Interval {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  bool empty_flag = false;

  void clip(double a, double c, double flat_tol = 1e-12) {
    if (std::abs(c) <= flat_tol) {
      if (a < -flat_tol) empty_flag = true;
      return;
    }
    const double t = -a / c;
    if (c > 0.0) {
      lo = std::max(lo, t);
    } else {
      hi = std::min(hi, t);
    }
  }

  bool empty(double tol = 1e-12) const { return empty_flag || lo > hi + tol; }
};

inline std::vector<double> line_point(const std::vector<double>& base,
                                      const std::vector<double>& dir,
                                      double t) {
  std::vector<double> w(base.size());
  for (std::size_t i = 0; i < base.size(); ++i) w[i] = base[i] + t * dir[i];
  return w;
}

// Exact L-infinity distance from a point to the segment base + t*dir,
// t in [0, t_len]. The objective is convex piecewise affine in t, so the
// minimum is attained at an endpoint, a coordinate-error zero, or a crossing
// of two coordinate errors.
inline double linf_point_to_segment(const std::vector<double>& p,
                                    const std::vector<double>& base,
                                    const std::vector<double>& dir,
                                    double t_len) {
  const std::size_t n = p.size();
  std::vector<double> candidates{0.0, t_len};
  for (std::size_t i = 0; i < n; ++i) {
    const double a = base[i] - p[i];
    if (std::abs(dir[i]) > 1e-14) candidates.push_back(-a / dir[i]);
    for (std::size_t j = i + 1; j < n; ++j) {
      const double b = base[j] - p[j];
      // |a + t*di| = |b + t*dj| at the roots of (a-b)+t(di-dj) and (a+b)+t(di+dj)
      const double dm = dir[i] - dir[j], dp = dir[i] + dir[j];
      if (std::abs(dm) > 1e-14) candidates.push_back(-(a - b) / dm);
      if (std::abs(dp) > 1e-14) candidates.push_back(-(a + b) / dp);
    }
  }
  double best = std::numeric_limits<double>::infinity();
  for (double t : candidates) {
    t = std::clamp(t, 0.0, t_len);
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      m = std::max(m, std::abs(base[i] + t * dir[i] - p[i]));
    }
    best = std::min(best, m);
  }
  return best;
}

inline bool lex_less(const std::vector<double>& a, const std::vector<double>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

inline void merge_sorted_actions(std::vector<int>& into, const std::vector<int>& from) {
  for (int k : from) {
    if (std::find(into.begin(), into.end(), k) == into.end()) into.push_back(k);
  }
  std::sort(into.begin(), into.end());
}

// Accumulates points/families with deduplication, then emits a
// deterministically ordered EquilibriumSet.
class SetBuilder {
 public:
  explicit SetBuilder(double eps) : eps_(eps) {}

  void add_point(Measure mu, std::vector<int> herding = {}) {
    for (auto& p : points_) {
      if (p.mu.max_norm_distance(mu) <= eps_) {
        merge_sorted_actions(p.herding, herding);
        return;
      }
    }
    std::sort(herding.begin(), herding.end());
    points_.push_back({std::move(mu), std::move(herding)});
  }

  // base/dir are full-dimension raw vectors; the segment is base + t*dir,
  // t in [t_lo, t_hi]. Normalizes orientation so the stored direction has a
  // positive leading component and t starts at zero.
  void add_family(const std::vector<double>& base, std::vector<double> dir,
                  double t_lo, double t_hi, std::vector<int> herding = {},
                  Tolerance tol = {}) {
    int lead = -1;
    for (std::size_t i = 0; i < dir.size(); ++i) {
      if (std::abs(dir[i]) > 1e-12) {
        lead = static_cast<int>(i);
        break;
      }
    }
    if (lead < 0) return;
    std::vector<double> start = line_point(base, dir, t_lo);
    double len = t_hi - t_lo;
    if (dir[lead] < 0.0) {
      start = line_point(base, dir, t_hi);
      for (double& d : dir) d = -d;
    }
    for (double& w : start) {
      if (w < 0.0 && w > -tol.eps) w = 0.0;
    }
    std::sort(herding.begin(), herding.end());

    for (auto& f : families_) {
      if (!same_line(f, start, dir)) continue;
      const double t0 = project(f, start);
      if (std::abs(t0) <= eps_ && std::abs(len - f.t_len) <= eps_) {
        merge_sorted_actions(f.herding, herding);  // same segment
        return;
      }
      const double lo = std::min(0.0, t0), hi = std::max(f.t_len, t0 + len);
      const bool overlaps = hi - lo <= f.t_len + len + eps_;
      if (overlaps && f.herding == herding) {
        const std::vector<double>& fb = f.base.weights();
        std::vector<double> merged_start = line_point(fb, f.direction, lo);
        for (double& w : merged_start) {
          if (w < 0.0 && w > -tol.eps) w = 0.0;
        }
        f = EquilibriumFamily{Measure(std::move(merged_start), tol),
                              f.direction, hi - lo, f.herding};
        return;
      }
    }
    families_.push_back(EquilibriumFamily{Measure(std::move(start), tol),
                                          std::move(dir), len,
                                          std::move(herding)});
  }

  EquilibriumSet build() {
    EquilibriumSet out;
    for (auto& p : points_) {
      bool on_family = false;
      for (const auto& f : families_) {
        if (linf_point_to_segment(p.mu.weights(), f.base.weights(), f.direction,
                                  f.t_len) <= eps_) {
          on_family = true;
          break;
        }
      }
      if (!on_family) out.points.push_back(std::move(p));
    }
    std::sort(out.points.begin(), out.points.end(),
              [](const EquilibriumPoint& a, const EquilibriumPoint& b) {
                return lex_less(a.mu.weights(), b.mu.weights());
              });
    out.families = std::move(families_);
    std::sort(out.families.begin(), out.families.end(),
              [](const EquilibriumFamily& a, const EquilibriumFamily& b) {
                return lex_less(a.base.weights(), b.base.weights());
              });
    return out;
  }

 private:
  bool same_line(const EquilibriumFamily& f, const std::vector<double>& start,
                 const std::vector<double>& dir) const {
    double dot = 0.0;
    for (std::size_t i = 0; i < dir.size(); ++i) dot += dir[i] * f.direction[i];
    if (std::abs(dot - 1.0) > 1e-9) return false;
    const double t0 = project(f, start);
    const std::vector<double> proj = line_point(f.base.weights(), f.direction, t0);
    for (std::size_t i = 0; i < dir.size(); ++i) {
      if (std::abs(proj[i] - start[i]) > eps_) return false;
    }
    return true;
  }

  double project(const EquilibriumFamily& f, const std::vector<double>& p) const {
    double t = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
      t += (p[i] - f.base[i]) * f.direction[i];
    }
    return t;
  }

  double eps_;
  std::vector<EquilibriumPoint> points_;
  std::vector<EquilibriumFamily> families_;
};

}  // namespace herdgames::detail

#endif  // HERDGAMES_SRC_SET_BUILDER_HPP
