#include "snlab/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace snlab {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

// Visits all size-r subsets of {0..n-1}.
template <typename F>
void for_each_subset(int n, int r, F&& visit) {
  if (r > n || r < 0) return;
  std::vector<int> idx(r);
  for (int i = 0; i < r; ++i) idx[i] = i;
  while (true) {
    visit(idx);
    int i = r - 1;
    while (i >= 0 && idx[i] == n - r + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < r; ++j) idx[j] = idx[j - 1] + 1;
  }
}

double eval_residual_norm(const VectorXd& y, const MatrixXd& B,
                          const VectorXd& c, const Exponent& q) {
  if (B.cols() == 0) return vector_norm(y, q);
  return vector_norm(y - B * c, q);
}

// Least-absolute-deviation solve: an optimal c interpolates k residuals to
// zero (B has full column rank k), so enumerating k-row subsets is exact.
DistResult dist_l1_enumerate(const VectorXd& y, const MatrixXd& B) {
  const int m = static_cast<int>(B.rows());
  const int k = static_cast<int>(B.cols());
  DistResult best;
  best.coeffs = least_squares_coeffs(B, y);
  best.value = eval_residual_norm(y, B, best.coeffs, Exponent::one());
  for_each_subset(m, k, [&](const std::vector<int>& rows) {
    MatrixXd Bs(k, k);
    VectorXd ys(k);
    for (int i = 0; i < k; ++i) {
      Bs.row(i) = B.row(rows[i]);
      ys(i) = y(rows[i]);
    }
    Eigen::FullPivLU<MatrixXd> lu(Bs);
    if (!lu.isInvertible()) return;
    VectorXd c = lu.solve(ys);
    double v = eval_residual_norm(y, B, c, Exponent::one());
    if (v < best.value) {
      best.value = v;
      best.coeffs = c;
    }
  });
  return best;
}

// Chebyshev solve: an optimal vertex has k+1 residuals of equal magnitude,
// one per sign pattern, so enumerating (subset, signs) pairs is exact.
DistResult dist_linf_enumerate(const VectorXd& y, const MatrixXd& B) {
  const int m = static_cast<int>(B.rows());
  const int k = static_cast<int>(B.cols());
  DistResult best;
  best.coeffs = least_squares_coeffs(B, y);
  best.value = eval_residual_norm(y, B, best.coeffs, Exponent::inf());
  for_each_subset(m, k + 1, [&](const std::vector<int>& rows) {
    MatrixXd M(k + 1, k + 1);
    VectorXd ys(k + 1);
    for (int i = 0; i <= k; ++i) {
      M.block(i, 0, 1, k) = B.row(rows[i]);
      ys(i) = y(rows[i]);
    }
    // First sign fixed +1: (c, t) -> (c, -t) covers the mirrored pattern.
    for (unsigned mask = 0; mask < (1u << k); ++mask) {
      M(0, k) = 1.0;
      for (int i = 1; i <= k; ++i) M(i, k) = (mask >> (i - 1)) & 1u ? -1.0 : 1.0;
      Eigen::FullPivLU<MatrixXd> lu(M);
      if (!lu.isInvertible()) continue;
      VectorXd ct = lu.solve(ys);
      VectorXd c = ct.head(k);
      double v = eval_residual_norm(y, B, c, Exponent::inf());
      if (v < best.value) {
        best.value = v;
        best.coeffs = c;
      }
    }
  });
  return best;
}

// Damped Newton on f(c) = sum_i (r_i^2 + mu^2)^(q/2), r = y - Bc.
// Convex for q >= 1; mu > 0 smooths the kink at r = 0 when q < 2.
bool newton_lq_step_solve(const VectorXd& y, const MatrixXd& B, double q,
                          double mu, VectorXd& c) {
  const int k = static_cast<int>(B.cols());
  const double mu2 = mu * mu;
  auto objective = [&](const VectorXd& cc) {
    VectorXd r = y - B * cc;
    double f = 0.0;
    for (int i = 0; i < r.size(); ++i)
      f += std::pow(r(i) * r(i) + mu2, 0.5 * q);
    return f;
  };
  double f = objective(c);
  for (int iter = 0; iter < 120; ++iter) {
    VectorXd r = y - B * c;
    VectorXd g1(r.size()), g2(r.size());
    for (int i = 0; i < r.size(); ++i) {
      const double s = r(i) * r(i) + mu2;
      g1(i) = q * r(i) * std::pow(s, 0.5 * q - 1.0);
      g2(i) = q * std::pow(s, 0.5 * q - 2.0) * ((q - 1.0) * r(i) * r(i) + mu2);
    }
    VectorXd grad = -B.transpose() * g1;
    if (grad.lpNorm<Eigen::Infinity>() <= 1e-13 * (1.0 + std::abs(f)))
      return true;
    MatrixXd H = B.transpose() * g2.asDiagonal() * B;
    H.diagonal().array() += 1e-12 * (1.0 + H.trace());
    VectorXd d = H.ldlt().solve(-grad);
    double step = 1.0;
    bool accepted = false;
    for (int bt = 0; bt < 40; ++bt) {
      VectorXd cand = c + step * d;
      double fc = objective(cand);
      if (fc <= f - 1e-4 * step * (-grad.dot(d))) {
        c = cand;
        f = fc;
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) return grad.lpNorm<Eigen::Infinity>() <=
                          1e-9 * (1.0 + std::abs(f));
    (void)k;
  }
  VectorXd r = y - B * c;
  VectorXd g1(r.size());
  for (int i = 0; i < r.size(); ++i) {
    const double s = r(i) * r(i) + mu2;
    g1(i) = q * r(i) * std::pow(s, 0.5 * q - 1.0);
  }
  VectorXd grad = -B.transpose() * g1;
  return grad.lpNorm<Eigen::Infinity>() <= 1e-9 * (1.0 + std::abs(f));
}

// Smoothed Newton continuation for exponents without an exact path.
// qeff is the exponent actually minimized (a large finite surrogate when
// the caller wants inf); the reported value is the true q-norm of the
// final residual.
DistResult dist_newton(const VectorXd& y, const MatrixXd& B,
                       const Exponent& q) {
  const double scale = std::max(vector_norm(y, Exponent::inf()), 1e-300);
  VectorXd ys = y / scale;
  VectorXd c = least_squares_coeffs(B, ys);
  const double qv = q.is_inf() ? 0.0 : q.value();
  bool ok = true;
  if (q.is_inf()) {
    for (double s : {8.0, 32.0, 128.0, 512.0})
      ok = newton_lq_step_solve(ys, B, s, 0.0, c) && ok;
  } else if (qv >= 2.0) {
    ok = newton_lq_step_solve(ys, B, qv, 0.0, c);
  } else {
    for (double mu : {1e-1, 1e-4, 1e-7, 1e-10, 1e-13})
      ok = newton_lq_step_solve(ys, B, qv, mu, c);
  }
  if (!ok) {
    throw ConvergenceError(
        "dist_to_subspace: inner convex solve did not converge");
  }
  DistResult res;
  res.coeffs = c * scale;
  res.value = eval_residual_norm(y, B, res.coeffs, q);
  return res;
}

}  // namespace

Eigen::VectorXd least_squares_coeffs(const Eigen::MatrixXd& B,
                                     const Eigen::VectorXd& y) {
  if (B.cols() == 0) return VectorXd(0);
  Eigen::JacobiSVD<MatrixXd> svd(B, Eigen::ComputeThinU | Eigen::ComputeThinV);
  svd.setThreshold(1e-12);
  VectorXd c = svd.solve(y);
  if (!c.allFinite()) c = VectorXd::Zero(B.cols());
  return c;
}

double vector_norm(const Eigen::VectorXd& x, const Exponent& p) {
  if (x.size() == 0) return 0.0;
  if (!x.allFinite())
    throw std::invalid_argument("vector_norm: entries must be finite");
  const double amax = x.cwiseAbs().maxCoeff();
  if (p.is_inf() || amax == 0.0) return amax;
  const double pv = p.value();
  if (pv == 1.0) return x.cwiseAbs().sum();
  if (pv == 2.0) return x.norm();
  double acc = 0.0;
  for (int i = 0; i < x.size(); ++i) acc += std::pow(std::abs(x(i)) / amax, pv);
  return amax * std::pow(acc, 1.0 / pv);
}

Exponent dual_exponent(const Exponent& p) { return p.dual(); }

Eigen::VectorXd holder_extremizer(const Eigen::VectorXd& d,
                                  const Exponent& p) {
  VectorXd x = VectorXd::Zero(d.size());
  const double amax = d.cwiseAbs().maxCoeff();
  if (amax == 0.0) {
    if (x.size() > 0) x(0) = 1.0;
    return x;
  }
  if (p.is(1.0)) {
    int j = 0;
    d.cwiseAbs().maxCoeff(&j);
    x(j) = d(j) >= 0.0 ? 1.0 : -1.0;
    return x;
  }
  if (p.is_inf()) {
    for (int i = 0; i < d.size(); ++i) x(i) = d(i) >= 0.0 ? 1.0 : -1.0;
    return x;
  }
  const double pd = p.dual().value();
  for (int i = 0; i < d.size(); ++i) {
    const double a = std::abs(d(i)) / amax;
    x(i) = (d(i) >= 0.0 ? 1.0 : -1.0) * std::pow(a, pd - 1.0);
  }
  const double nx = vector_norm(x, p);
  if (nx > 0.0) x /= nx;
  return x;
}

Eigen::VectorXd norm_subgradient(const Eigen::VectorXd& z, const Exponent& q) {
  VectorXd u = VectorXd::Zero(z.size());
  const double nz = vector_norm(z, q);
  if (nz == 0.0) return u;
  if (q.is_inf()) {
    int i = 0;
    z.cwiseAbs().maxCoeff(&i);
    u(i) = z(i) >= 0.0 ? 1.0 : -1.0;
    return u;
  }
  if (q.is(1.0)) {
    for (int i = 0; i < z.size(); ++i)
      u(i) = z(i) > 0.0 ? 1.0 : (z(i) < 0.0 ? -1.0 : 0.0);
    return u;
  }
  const double qv = q.value();
  for (int i = 0; i < z.size(); ++i) {
    const double t = std::abs(z(i)) / nz;
    u(i) = (z(i) >= 0.0 ? 1.0 : -1.0) * std::pow(t, qv - 1.0);
  }
  return u;
}

DistResult dist_to_subspace_with_coeffs(const Eigen::VectorXd& y,
                                        const Eigen::MatrixXd& B,
                                        const Exponent& q) {
  if (B.cols() > 0 && B.rows() != y.size())
    throw std::invalid_argument("dist_to_subspace: row count mismatch");
  DistResult res;
  if (B.cols() == 0) {
    res.value = vector_norm(y, q);
    res.coeffs = VectorXd(0);
    return res;
  }
  if (B.cols() >= B.rows()) {
    // Full column rank makes B square (or wider, excluded by precondition),
    // so the subspace is the whole space.
    res.coeffs = least_squares_coeffs(B, y);
    res.value = std::max(eval_residual_norm(y, B, res.coeffs, q), 0.0);
    return res;
  }
  if (q.is(2.0)) {
    res.coeffs = least_squares_coeffs(B, y);
    res.value = (y - B * res.coeffs).norm();
    return res;
  }
  if (q.is(1.0) && B.rows() <= 12) return dist_l1_enumerate(y, B);
  if (q.is_inf() && B.rows() <= 12) return dist_linf_enumerate(y, B);
  return dist_newton(y, B, q);
}

double dist_to_subspace(const Eigen::VectorXd& y, const Eigen::MatrixXd& B,
                        const Exponent& q) {
  return dist_to_subspace_with_coeffs(y, B, q).value;
}

}  // namespace snlab
