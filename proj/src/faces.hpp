#ifndef HERDGAMES_SRC_FACES_HPP
#define HERDGAMES_SRC_FACES_HPP

// Internal support-enumeration pieces shared by the classical and alpha-RNE
// solvers.

#include <Eigen/Dense>
#include <algorithm>
#include <sstream>
#include <vector>

#include "herdgames/game.hpp"

namespace herdgames::detail {

inline std::vector<int> mask_indices(unsigned mask, int n) {
  std::vector<int> s;
  for (int i = 0; i < n; ++i) {
    if (mask & (1u << i)) s.push_back(i);
  }
  return s;
}

inline std::string face_name(const GameSpec& g, const std::vector<int>& s) {
  std::ostringstream os;
  os << "{";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) os << ",";
    os << g.labels()[s[i]];
  }
  os << "}";
  return os.str();
}

// Linear system for rational support S: utilities equal across S and total
// mass `mass` on S. fixed_contrib[i] is the utility contribution at action i
// of coordinates held fixed outside S (zero for the classical solver, the
// herding column times 1-alpha for the P_alpha solver).
inline void equal_utility_system(const GameSpec& g, const std::vector<int>& s,
                                 double mass,
                                 const std::vector<double>& fixed_contrib,
                                 Eigen::MatrixXd& A, Eigen::VectorXd& rhs) {
  const auto m = static_cast<Eigen::Index>(s.size());
  const AffineUtility& u = g.affine();
  A.setZero(m, m);
  rhs.setZero(m);
  for (Eigen::Index r = 0; r + 1 < m; ++r) {
    const int i = s[r + 1], i0 = s[0];
    for (Eigen::Index c = 0; c < m; ++c) {
      A(r, c) = u.M[i][s[c]] - u.M[i0][s[c]];
    }
    rhs(r) = -(u.b[i] - u.b[i0]) - (fixed_contrib[i] - fixed_contrib[i0]);
  }
  for (Eigen::Index c = 0; c < m; ++c) A(m - 1, c) = 1.0;
  rhs(m - 1) = mass;
}

// Best-response check: every action of S attains the eps-relaxed utility
// maximum at mu.
inline bool face_actions_are_best(const GameSpec& g, const std::vector<int>& s,
                                  const Measure& mu, double eps) {
  const std::vector<double> us = utilities(g, mu);
  const double umax = *std::max_element(us.begin(), us.end());
  for (int i : s) {
    if (us[i] < umax - eps) return false;
  }
  return true;
}

}  // namespace herdgames::detail

#endif  // HERDGAMES_SRC_FACES_HPP
