#include "snlab/opnorm.hpp"

#include <algorithm>
#include <cmath>

namespace snlab {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

NormEstimate exact_estimate(double value, VectorXd witness) {
  NormEstimate est;
  est.lower = value;
  est.upper = value;
  est.witness = std::move(witness);
  est.method = NormEstimate::Method::exact;
  return est;
}

// max over columns j of ||T e_j||_q; the l^1 ball's extreme points are +-e_j.
NormEstimate norm_from_columns(const MatrixXd& M, const Exponent& q) {
  double best = 0.0;
  int best_j = 0;
  for (int j = 0; j < M.cols(); ++j) {
    const double v = vector_norm(M.col(j), q);
    if (v > best) {
      best = v;
      best_j = j;
    }
  }
  VectorXd w = VectorXd::Zero(M.cols());
  w(best_j) = 1.0;
  return exact_estimate(best, std::move(w));
}

// max over rows i of ||row_i||_{p'}; each row is a functional on l^p.
NormEstimate norm_from_rows(const MatrixXd& M, const Exponent& p) {
  const Exponent pd = p.dual();
  double best = -1.0;
  int best_i = 0;
  for (int i = 0; i < M.rows(); ++i) {
    const double v = vector_norm(M.row(i).transpose(), pd);
    if (v > best) {
      best = v;
      best_i = i;
    }
  }
  VectorXd w = holder_extremizer(M.row(best_i).transpose(), p);
  return exact_estimate(std::max(best, 0.0), std::move(w));
}

}  // namespace

NormEstimate operator_norm(const FiniteOperator& T, std::uint64_t seed) {
  return operator_norm_budget(T, 32, 500, seed);
}

NormEstimate operator_norm_budget(const FiniteOperator& T, int restarts,
                                  int max_iterations, std::uint64_t seed) {
  const MatrixXd& M = T.matrix();
  const Exponent p = T.dom().p;
  const Exponent q = T.cod().p;
  const int n = T.cols();

  if (M.isZero(0.0)) {
    NormEstimate est = exact_estimate(0.0, VectorXd::Zero(n));
    return est;
  }
  if (p.is(1.0)) return norm_from_columns(M, q);
  if (q.is_inf()) return norm_from_rows(M, p);
  if (p.is(2.0) && q.is(2.0)) {
    Eigen::JacobiSVD<MatrixXd> svd(M, Eigen::ComputeThinV);
    return exact_estimate(svd.singularValues()(0), svd.matrixV().col(0));
  }

  // Dual-sign power iteration: x <- argmax_{||x||_p<=1} <T' u(x), x> with
  // u(x) the norming functional of Tx. Ascends ||Tx||_q; exact for (2,2).
  auto rng = detail::make_rng(seed, {0x0951});
  double best = 0.0;
  VectorXd best_x = VectorXd::Zero(n);
  for (int r = 0; r < restarts; ++r) {
    VectorXd x;
    if (r < std::min(n, 12)) {
      x = VectorXd::Zero(n);
      x(r) = 1.0;
    } else {
      x = detail::gaussian_vector(rng, n);
      const double nx = vector_norm(x, p);
      x = nx > 0.0 ? VectorXd(x / nx) : VectorXd::Unit(n, 0);
    }
    double val = vector_norm(M * x, q);
    for (int iter = 0; iter < max_iterations; ++iter) {
      VectorXd u = norm_subgradient(M * x, q);
      VectorXd d = M.transpose() * u;
      VectorXd x_next = holder_extremizer(d, p);
      const double v_next = vector_norm(M * x_next, q);
      // The dual-sign step never decreases the objective; stop once the
      // relative gain drops below 1e-12.
      const bool converged = v_next <= val * (1.0 + 1e-12);
      if (v_next > val) {
        val = v_next;
        x = x_next;
      }
      if (converged) break;
    }
    if (val > best) {
      best = val;
      best_x = x;
    }
  }
  NormEstimate est;
  est.lower = best;
  est.upper = std::nullopt;
  est.witness = best_x;
  est.method = NormEstimate::Method::optimized;
  return est;
}

double oracle_operator_norm(const FiniteOperator& T, int budget,
                            std::uint64_t seed) {
  if (budget < 1) throw std::invalid_argument("oracle budget must be >= 1");
  const MatrixXd& M = T.matrix();
  const Exponent p = T.dom().p;
  const Exponent q = T.cod().p;
  const int n = T.cols();
  if (M.isZero(0.0)) return 0.0;

  if (p.is(1.0)) {
    double best = 0.0;
    for (int j = 0; j < n; ++j) best = std::max(best, vector_norm(M.col(j), q));
    return best;
  }
  if (p.is_inf() && n <= 20) {
    // Extreme points are the sign vectors; the leading sign is fixed by
    // symmetry of the norm.
    double best = 0.0;
    VectorXd s(n);
    const std::uint64_t count = 1ULL << (n - 1);
    for (std::uint64_t mask = 0; mask < count; ++mask) {
      s(0) = 1.0;
      for (int i = 1; i < n; ++i) s(i) = (mask >> (i - 1)) & 1ULL ? -1.0 : 1.0;
      best = std::max(best, vector_norm(M * s, q));
    }
    return best;
  }

  auto rng = detail::make_rng(seed, {0x0A1C});
  double best = 0.0;
  VectorXd best_x = VectorXd::Unit(n, 0);
  for (int s = 0; s < budget; ++s) {
    VectorXd x = detail::gaussian_vector(rng, n);
    const double nx = vector_norm(x, p);
    if (nx == 0.0) continue;
    x /= nx;
    const double v = vector_norm(M * x, q);
    if (v > best) {
      best = v;
      best_x = x;
    }
  }
  // Local polish: random perturbations projected back to the sphere.
  double delta = 0.3;
  const int polish = std::max(budget / 4, 200);
  for (int s = 0; s < polish; ++s) {
    VectorXd x = best_x + delta * detail::gaussian_vector(rng, n);
    const double nx = vector_norm(x, p);
    if (nx == 0.0) continue;
    x /= nx;
    const double v = vector_norm(M * x, q);
    if (v > best) {
      best = v;
      best_x = x;
      delta *= 1.05;
    } else {
      delta = std::max(delta * 0.97, 1e-8);
    }
  }
  return best;
}

}  // namespace snlab
