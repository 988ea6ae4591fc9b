#ifndef HERDGAMES_SRC_LINEAR_HPP
#define HERDGAMES_SRC_LINEAR_HPP

// Internal rank-revealing solver for the small square systems produced by
// support enumeration. Not part of the public API.

#include <Eigen/Dense>
#include <vector>

namespace herdgames::detail {

struct FaceSolve {
  enum class Kind { Inconsistent, Unique, Line, Degenerate };
  Kind kind = Kind::Inconsistent;
  std::vector<double> x;                    // particular solution
  std::vector<std::vector<double>> kernel;  // null-space basis, unit columns
};

inline FaceSolve solve_face_system(const Eigen::MatrixXd& A,
                                   const Eigen::VectorXd& rhs) {
  Eigen::FullPivLU<Eigen::MatrixXd> lu(A);
  lu.setThreshold(1e-10);
  const auto n = A.cols();
  const auto rank = lu.rank();

  FaceSolve out;
  Eigen::VectorXd x = lu.solve(rhs);
  const double scale = 1.0 + rhs.lpNorm<Eigen::Infinity>();
  if ((A * x - rhs).lpNorm<Eigen::Infinity>() > 1e-8 * scale) {
    out.kind = FaceSolve::Kind::Inconsistent;
    return out;
  }
  out.x.assign(x.data(), x.data() + n);
  if (rank == n) {
    out.kind = FaceSolve::Kind::Unique;
    return out;
  }
  Eigen::MatrixXd ker = lu.kernel();
  for (Eigen::Index c = 0; c < ker.cols(); ++c) {
    Eigen::VectorXd d = ker.col(c).normalized();
    out.kernel.emplace_back(d.data(), d.data() + n);
  }
  out.kind = rank == n - 1 ? FaceSolve::Kind::Line : FaceSolve::Kind::Degenerate;
  return out;
}

// Does the solution set of A x = rhs contain a point with every component
// >= lb? Decided by alternating projections between the affine set and the
// box, which converge to an intersection point whenever one exists. Used to
// tell a genuine >= 2-dimensional equilibrium continuum (degenerate) from a
// rank-deficient system whose solutions all leave the face.
inline bool affine_set_meets_box(const Eigen::MatrixXd& A,
                                 const Eigen::VectorXd& rhs, double lb) {
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(A);
  Eigen::VectorXd x = cod.solve(rhs);
  const double tol = 1e-9 * (1.0 + rhs.lpNorm<Eigen::Infinity>());
  for (int iter = 0; iter < 2000; ++iter) {
    Eigen::VectorXd clamped = x.cwiseMax(lb);
    Eigen::VectorXd next = clamped - cod.solve(A * clamped - rhs);
    if (next.minCoeff() >= lb - 1e-12 &&
        (A * next - rhs).lpNorm<Eigen::Infinity>() <= tol) {
      return true;
    }
    if ((next - x).lpNorm<Eigen::Infinity>() < 1e-13) {
      return false;  // converged onto the gap between the two sets
    }
    x = std::move(next);
  }
  return false;
}

}  // namespace herdgames::detail

#endif  // HERDGAMES_SRC_LINEAR_HPP
