#pragma once

#include <Eigen/Dense>
#include <stdexcept>

#include "snlab/exponent.hpp"

namespace snlab {

// Finite-dimensional l^p space: the metric substrate every solver works in.
// The closed unit ball is represented implicitly as {x : vector_norm(x,p) <= 1}.
struct NormedSpace {
  int dim = 1;
  Exponent p = Exponent::two();

  NormedSpace() = default;
  NormedSpace(int dim_, Exponent p_) : dim(dim_), p(p_) {
    if (dim < 1) throw std::invalid_argument("NormedSpace: dim must be >= 1");
  }

  friend bool operator==(const NormedSpace& a, const NormedSpace& b) {
    return a.dim == b.dim && a.p == b.p;
  }
  friend bool operator!=(const NormedSpace& a, const NormedSpace& b) {
    return !(a == b);
  }
};

// Relative threshold below which a distance-to-subspace is considered an
// "in subspace" decision. Shared by all solvers so the decision is consistent.
inline constexpr double kInSubspaceRelTol = 1e-9;

// Signalled by iterative convex solves that fail to reach their tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// (sum |x_i|^p)^(1/p) for finite p, max |x_i| for p = inf.
// Internally rescaled by max|x_i| so large exponents neither overflow
// nor lose accuracy.
double vector_norm(const Eigen::VectorXd& x, const Exponent& p);

// Conjugate exponent; thin wrapper over Exponent::dual for API symmetry.
Exponent dual_exponent(const Exponent& p);

// Unit-p-norm vector x maximizing <d, x>; the maximum equals ||d||_{p'}.
// For d = 0 returns e_1.
Eigen::VectorXd holder_extremizer(const Eigen::VectorXd& d, const Exponent& p);

// Norming functional u of z: ||u||_{q'} <= 1 and <u, z> = ||z||_q.
// For z = 0 returns 0.
Eigen::VectorXd norm_subgradient(const Eigen::VectorXd& z, const Exponent& q);

// Rank-safe least squares: minimizes ||y - B c||_2 with singular directions
// dropped, so degenerate B (including all-zero columns) yields finite
// coefficients instead of Inf/NaN.
Eigen::VectorXd least_squares_coeffs(const Eigen::MatrixXd& B,
                                     const Eigen::VectorXd& y);

// min over coefficient vectors c of ||y - B c||_q, the quotient norm of y
// modulo span(B). Columns of B span the subspace; an empty B (0 columns)
// means the zero subspace, so the plain norm is returned.
//
// q = 2 is solved by least squares. q in {1, inf} is solved exactly by
// vertex enumeration while rows <= 12, and by smoothed Newton continuation
// beyond that. Other q use damped Newton on the smooth convex objective;
// non-convergence raises ConvergenceError.
double dist_to_subspace(const Eigen::VectorXd& y, const Eigen::MatrixXd& B,
                        const Exponent& q);

struct DistResult {
  double value = 0.0;
  Eigen::VectorXd coeffs;  // the minimizing c (empty when B has no columns)
};

// Same minimization, but also reports the optimal coefficients.
DistResult dist_to_subspace_with_coeffs(const Eigen::VectorXd& y,
                                        const Eigen::MatrixXd& B,
                                        const Exponent& q);

}  // namespace snlab
