#include "snlab/snumbers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace snlab {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

constexpr double kRankRelTol = 1e-12;

int numerical_rank(const Eigen::JacobiSVD<MatrixXd>& svd) {
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return 0;
  int r = 0;
  for (int i = 0; i < s.size(); ++i)
    if (s(i) > kRankRelTol * s(0)) ++r;
  return r;
}

// Keeps the column count, replacing the columns by an orthonormal set with
// the same span (rank-deficient input gets arbitrary orthonormal fill,
// which can only enlarge the span).
MatrixXd orthonormal_columns(const MatrixXd& B) {
  if (B.cols() == 0) return B;
  Eigen::HouseholderQR<MatrixXd> qr(B);
  MatrixXd Q = qr.householderQ();
  return Q.leftCols(B.cols());
}

// Inner-loop evaluations run thousands of times per solve and use a
// lighter ascent budget than the public operator_norm.
double norm_value(const MatrixXd& M, const Exponent& p, const Exponent& q,
                  std::uint64_t eval_seed) {
  FiniteOperator op(M, NormedSpace(static_cast<int>(M.cols()), p),
                    NormedSpace(static_cast<int>(M.rows()), q));
  return operator_norm_budget(op, 12, 200, eval_seed).lower;
}

struct NormWitness {
  double value = 0.0;
  VectorXd x;  // ||x||_p <= 1, ||Mx||_q == value
  VectorXd u;  // norming functional of Mx
};

NormWitness norm_with_witness(const MatrixXd& M, const Exponent& p,
                              const Exponent& q, std::uint64_t eval_seed) {
  FiniteOperator op(M, NormedSpace(static_cast<int>(M.cols()), p),
                    NormedSpace(static_cast<int>(M.rows()), q));
  NormEstimate est = operator_norm_budget(op, 12, 200, eval_seed);
  NormWitness w;
  w.value = est.lower;
  w.x = est.witness;
  w.u = norm_subgradient(M * est.witness, q);
  return w;
}

// ---------------------------------------------------------------------------
// approximation numbers: alternating descent over factor pairs F = U V
// ---------------------------------------------------------------------------

struct FactorPair {
  MatrixXd U;  // m x r
  MatrixXd V;  // r x n
};

// Exact row-wise re-solve of U when q = inf: the max row norm is separable,
// row i solves min_c || t_i - V^T c ||_{p'}.
void left_step_exact(const MatrixXd& T, FactorPair& f, const Exponent& p) {
  const Exponent pd = p.dual();
  const MatrixXd Vt = f.V.transpose();
  for (int i = 0; i < T.rows(); ++i) {
    DistResult res = dist_to_subspace_with_coeffs(T.row(i).transpose(), Vt, pd);
    f.U.row(i) = res.coeffs.transpose();
  }
}

// Exact column-wise re-solve of V when p = 1: the max column norm is
// separable, column j solves min_c || t_j - U c ||_q.
void right_step_exact(const MatrixXd& T, FactorPair& f, const Exponent& q) {
  for (int j = 0; j < T.cols(); ++j) {
    DistResult res = dist_to_subspace_with_coeffs(T.col(j), f.U, q);
    f.V.col(j) = res.coeffs;
  }
}

// Subgradient re-solve of one factor; the objective ||T - UV|| is convex in
// each factor separately but polyhedral for the palette exponents, so the
// method takes normalized diminishing steps (moves through kinks instead of
// stalling on them), tracks the best iterate, and restarts from it whenever
// a scale level stops paying off.
void factor_subgrad_step(const MatrixXd& T, FactorPair& f, bool left_side,
                         const Exponent& p, const Exponent& q,
                         std::uint64_t eval_seed, int iters) {
  MatrixXd& W = left_side ? f.U : f.V;
  MatrixXd best_W = W;
  double best_f = norm_value(T - f.U * f.V, p, q, eval_seed);
  double scale = 0.25 * std::max(1.0, W.norm());
  double checkpoint = best_f;
  for (int it = 0; it < iters; ++it) {
    NormWitness nw = norm_with_witness(T - f.U * f.V, p, q, eval_seed);
    if (nw.value < best_f) {
      best_f = nw.value;
      best_W = W;
    }
    MatrixXd G = left_side
                     ? MatrixXd(-nw.u * (f.V * nw.x).transpose())
                     : MatrixXd(-(f.U.transpose() * nw.u) * nw.x.transpose());
    const double gn = G.norm();
    if (gn <= 1e-150) break;
    W -= (scale / (gn * std::sqrt(it + 1.0))) * G;
    if ((it + 1) % 10 == 0) {
      if (best_f >= checkpoint - 1e-14) {
        scale *= 0.5;
        W = best_W;
        if (scale < 1e-10) break;
      }
      checkpoint = best_f;
    }
  }
  const double last = norm_value(T - f.U * f.V, p, q, eval_seed);
  if (last > best_f) W = best_W;
}

double ak_objective(const MatrixXd& T, const FactorPair& f, const Exponent& p,
                    const Exponent& q, std::uint64_t eval_seed) {
  return norm_value(T - f.U * f.V, p, q, eval_seed);
}

// Greedy coordinate wiggle on both factors at shrinking step sizes.
void polish_factors(const MatrixXd& T, FactorPair& f, double& fv,
                    const Exponent& p, const Exponent& q,
                    std::uint64_t eval_seed) {
  const double scale = std::max(1.0, T.cwiseAbs().maxCoeff());
  for (double rel : {3e-2, 1e-2, 3e-3, 1e-3, 3e-4, 1e-4}) {
    const double delta = rel * scale;
    for (MatrixXd* W : {&f.U, &f.V}) {
      for (int i = 0; i < W->rows(); ++i) {
        for (int j = 0; j < W->cols(); ++j) {
          for (double sgn : {1.0, -1.0}) {
            (*W)(i, j) += sgn * delta;
            const double cand = ak_objective(T, f, p, q, eval_seed);
            if (cand < fv) {
              fv = cand;
            } else {
              (*W)(i, j) -= sgn * delta;
            }
          }
        }
      }
    }
  }
}

// Randomized pattern search over one factor with the other eliminated by
// its exact re-solve (when available). Random directions cross the ridges
// of the polyhedral objective that axis-aligned polish stalls on.
void pattern_search_factors(const MatrixXd& T, FactorPair& f, double& fv,
                            const Exponent& p, const Exponent& q,
                            std::uint64_t eval_seed, int trials) {
  auto rng = detail::make_rng(eval_seed, {0x9A77E});
  const bool v_exact = p.is(1.0);
  const bool u_exact = q.is_inf();
  auto resolve_and_eval = [&](FactorPair& g) {
    if (u_exact) left_step_exact(T, g, p);
    if (v_exact) right_step_exact(T, g, q);
    return ak_objective(T, g, p, q, eval_seed);
  };
  double radius = 0.2 * std::max({1.0, f.U.norm(), f.V.norm()});
  for (int t = 0; t < trials; ++t) {
    FactorPair g = f;
    if (v_exact && !u_exact) {
      g.U += radius * detail::gaussian_matrix(rng, g.U.rows(), g.U.cols());
    } else if (u_exact && !v_exact) {
      g.V += radius * detail::gaussian_matrix(rng, g.V.rows(), g.V.cols());
    } else if (u_exact && v_exact) {
      g.U += radius * detail::gaussian_matrix(rng, g.U.rows(), g.U.cols());
    } else {
      g.U += radius * detail::gaussian_matrix(rng, g.U.rows(), g.U.cols());
      g.V += radius * detail::gaussian_matrix(rng, g.V.rows(), g.V.cols());
    }
    const double cand = resolve_and_eval(g);
    if (cand < fv) {
      fv = cand;
      f = g;
      radius *= 1.3;
    } else {
      radius = std::max(radius * 0.85, 1e-9);
    }
  }
}

FactorPair factor_from_approximant(const MatrixXd& F, int r) {
  Eigen::JacobiSVD<MatrixXd> svd(F, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const int take = std::min<int>(r, svd.singularValues().size());
  FactorPair f;
  f.U = MatrixXd::Zero(F.rows(), r);
  f.V = MatrixXd::Zero(r, F.cols());
  for (int i = 0; i < take; ++i) {
    const double s = std::sqrt(std::max(svd.singularValues()(i), 0.0));
    f.U.col(i) = svd.matrixU().col(i) * s;
    f.V.row(i) = svd.matrixV().col(i).transpose() * s;
  }
  return f;
}

SNumberResult approximation_number_impl(const FiniteOperator& T, int k,
                                        const SolverConfig& cfg,
                                        const std::vector<MatrixXd>& warm_F) {
  if (k < 1) throw std::invalid_argument("approximation_number: k must be >= 1");
  const MatrixXd& M = T.matrix();
  const int m = T.rows(), n = T.cols();
  const Exponent p = T.dom().p, q = T.cod().p;

  SNumberResult res;
  res.k = k;
  res.kind = SNumberKind::approximation;

  if (k > std::min(m, n)) {
    res.value = 0.0;
    res.witness = M;  // rank(T) < k, so T itself is admissible
    res.bound_side = BoundSide::two_sided;
    return res;
  }

  Eigen::JacobiSVD<MatrixXd> svd(M, Eigen::ComputeFullU | Eigen::ComputeFullV);
  if (numerical_rank(svd) < k) {
    res.value = 0.0;
    res.witness = M;
    res.bound_side = BoundSide::two_sided;
    return res;
  }

  if (p.is(2.0) && q.is(2.0)) {
    // Eckart-Young: the truncated SVD is the exact minimizer.
    const int r = k - 1;
    MatrixXd F = MatrixXd::Zero(m, n);
    if (r > 0)
      F = svd.matrixU().leftCols(r) *
          svd.singularValues().head(r).asDiagonal() *
          svd.matrixV().leftCols(r).transpose();
    res.value = svd.singularValues()(k - 1);
    res.witness = F;
    res.bound_side = BoundSide::two_sided;
    return res;
  }

  if (k == 1) {
    NormEstimate est = operator_norm(T, cfg.seed);
    res.value = est.lower;
    res.witness = MatrixXd::Zero(m, n);
    res.bound_side = est.is_exact() ? BoundSide::two_sided : BoundSide::lower;
    return res;
  }

  const int r = k - 1;
  const std::uint64_t eval_seed = detail::splitmix64(cfg.seed ^ 0xA11);
  auto rng = detail::make_rng(cfg.seed, {0xAAC0, static_cast<std::uint64_t>(k)});

  std::vector<FactorPair> seeds;
  {
    FactorPair f;  // SVD truncation seed
    f.U = MatrixXd::Zero(m, r);
    f.V = MatrixXd::Zero(r, n);
    for (int i = 0; i < r; ++i) {
      const double s = std::sqrt(svd.singularValues()(i));
      f.U.col(i) = svd.matrixU().col(i) * s;
      f.V.row(i) = svd.matrixV().col(i).transpose() * s;
    }
    seeds.push_back(std::move(f));
  }
  seeds.push_back({MatrixXd::Zero(m, r), MatrixXd::Zero(r, n)});
  {
    // Column-truncation seed: reproduce the r heaviest columns exactly.
    std::vector<int> order(n);
    for (int j = 0; j < n; ++j) order[j] = j;
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      return vector_norm(M.col(a), q) > vector_norm(M.col(b), q);
    });
    FactorPair f{MatrixXd::Zero(m, r), MatrixXd::Zero(r, n)};
    for (int i = 0; i < r; ++i) {
      f.U.col(i) = M.col(order[i]);
      f.V(i, order[i]) = 1.0;
    }
    seeds.push_back(std::move(f));
  }
  {
    // Row-truncation seed: reproduce the r heaviest rows exactly.
    const Exponent pd = p.dual();
    std::vector<int> order(m);
    for (int i = 0; i < m; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      return vector_norm(M.row(a).transpose(), pd) >
             vector_norm(M.row(b).transpose(), pd);
    });
    FactorPair f{MatrixXd::Zero(m, r), MatrixXd::Zero(r, n)};
    for (int i = 0; i < r; ++i) {
      f.U(order[i], i) = 1.0;
      f.V.row(i) = M.row(order[i]);
    }
    seeds.push_back(std::move(f));
  }
  for (const MatrixXd& F : warm_F) seeds.push_back(factor_from_approximant(F, r));
  const double sigma1 = svd.singularValues()(0);
  while (static_cast<int>(seeds.size()) < cfg.restarts) {
    FactorPair f;
    const double a = std::sqrt(sigma1 / std::sqrt(double(m) * double(n)));
    f.U = a * detail::gaussian_matrix(rng, m, r);
    f.V = a * detail::gaussian_matrix(rng, r, n);
    seeds.push_back(std::move(f));
  }

  // Lite configurations (used for the inner a_k evaluations of the Weyl and
  // Chang searches) trade refinement depth for speed.
  const bool thorough = cfg.outer_iterations >= 150;
  const int subgrad_iters = thorough ? 24 : 10;

  double best = std::numeric_limits<double>::infinity();
  FactorPair best_f;
  bool converged_any = false;
  for (FactorPair& f : seeds) {
    double fv = ak_objective(M, f, p, q, eval_seed);
    bool converged = false;
    for (int outer = 0; outer < cfg.outer_iterations; ++outer) {
      if (q.is_inf())
        left_step_exact(M, f, p);
      else
        factor_subgrad_step(M, f, true, p, q, eval_seed, subgrad_iters);
      if (p.is(1.0))
        right_step_exact(M, f, q);
      else
        factor_subgrad_step(M, f, false, p, q, eval_seed, subgrad_iters);
      const double fn = ak_objective(M, f, p, q, eval_seed);
      if (fv - fn <= cfg.rel_tol * std::max(1.0, fv)) {
        fv = std::min(fv, fn);
        converged = true;
        break;
      }
      fv = fn;
    }
    converged_any = converged_any || converged;
    if (fv < best) {
      best = fv;
      best_f = f;
    }
  }
  // Refine the winner: the coordinate polish hops over polyhedral kinks the
  // alternation stalls on, after which the alternation descends further.
  for (int round = 0; round < (thorough ? 3 : 1); ++round) {
    const double before = best;
    polish_factors(M, best_f, best, p, q, eval_seed);
    pattern_search_factors(M, best_f, best, p, q,
                           detail::splitmix64(eval_seed ^ (round + 1)),
                           thorough ? 220 : 60);
    for (int outer = 0; outer < 60; ++outer) {
      if (q.is_inf())
        left_step_exact(M, best_f, p);
      else
        factor_subgrad_step(M, best_f, true, p, q, eval_seed, subgrad_iters);
      if (p.is(1.0))
        right_step_exact(M, best_f, q);
      else
        factor_subgrad_step(M, best_f, false, p, q, eval_seed, subgrad_iters);
      const double fn = ak_objective(M, best_f, p, q, eval_seed);
      if (best - fn <= cfg.rel_tol * std::max(1.0, best)) {
        best = std::min(best, fn);
        break;
      }
      best = fn;
    }
    if (before - best <= cfg.rel_tol * std::max(1.0, before)) break;
  }

  res.value = best;
  res.witness = best_f.U * best_f.V;
  res.bound_side = BoundSide::upper;
  res.converged = converged_any;
  // The certificate value is pinned to the full-budget norm of the final
  // residual, so recomputing at the witness reproduces it.
  {
    FiniteOperator resid(M - res.witness, T.dom(), T.cod());
    res.value = std::max(res.value, operator_norm(resid).lower);
  }
  return res;
}

// ---------------------------------------------------------------------------
// Kolmogorov numbers: descent over codomain subspace bases
// ---------------------------------------------------------------------------

struct QuotientSup {
  double value = 0.0;
  VectorXd x;         // achieving domain ball point
  VectorXd coeffs;    // optimal quotient coefficients at x
  VectorXd residual;  // Tx - B c
};

void consider_point(QuotientSup& best, const MatrixXd& T, const MatrixXd& B,
                    const Exponent& q, const VectorXd& x) {
  const VectorXd y = T * x;
  DistResult d = dist_to_subspace_with_coeffs(y, B, q);
  if (d.value > best.value) {
    best.value = d.value;
    best.x = x;
    best.coeffs = d.coeffs;
    best.residual = B.cols() > 0 ? VectorXd(y - B * d.coeffs) : y;
  }
}

// sup over the l^p unit ball of dist_q(Tx, span B). Exact for p in {1, inf}
// (extreme-point enumeration) and for q = 2 with p in {1, 2}; projected
// ascent otherwise.
QuotientSup quotient_sup(const MatrixXd& T, const MatrixXd& B,
                         const Exponent& p, const Exponent& q,
                         std::uint64_t eval_seed) {
  const int n = static_cast<int>(T.cols());
  QuotientSup best;
  best.x = VectorXd::Zero(n);
  best.coeffs = VectorXd::Zero(B.cols());
  best.residual = VectorXd::Zero(T.rows());

  if (p.is(1.0)) {
    for (int j = 0; j < n; ++j) consider_point(best, T, B, q, VectorXd::Unit(n, j));
    return best;
  }
  if (p.is_inf() && n <= 16) {
    VectorXd s(n);
    const std::uint64_t count = 1ULL << (n - 1);
    for (std::uint64_t mask = 0; mask < count; ++mask) {
      s(0) = 1.0;
      for (int i = 1; i < n; ++i) s(i) = (mask >> (i - 1)) & 1ULL ? -1.0 : 1.0;
      consider_point(best, T, B, q, s);
    }
    return best;
  }
  if (q.is(2.0)) {
    // dist_2 to an orthonormalized basis is a plain operator norm of the
    // projected matrix.
    const MatrixXd Bo = orthonormal_columns(B);
    const MatrixXd P = B.cols() > 0 ? MatrixXd(T - Bo * (Bo.transpose() * T)) : T;
    NormWitness nw = norm_with_witness(P, p, Exponent::two(), eval_seed);
    best.value = nw.value;
    best.x = nw.x;
    best.coeffs = B.cols() > 0
                      ? VectorXd(least_squares_coeffs(B, T * nw.x))
                      : VectorXd::Zero(0);
    best.residual = B.cols() > 0 ? VectorXd(T * nw.x - B * best.coeffs)
                                 : VectorXd(T * nw.x);
    return best;
  }

  // Ascent fallback: alternate the quotient coefficients with a dual-sign
  // step in x.
  auto rng = detail::make_rng(eval_seed, {0xD0});
  std::vector<VectorXd> starts;
  for (int j = 0; j < std::min(n, 6); ++j) starts.push_back(VectorXd::Unit(n, j));
  for (int t = 0; t < 6; ++t) {
    VectorXd x = detail::gaussian_vector(rng, n);
    const double nx = vector_norm(x, p);
    if (nx > 0) starts.push_back(x / nx);
  }
  for (VectorXd x : starts) {
    double val = dist_to_subspace(T * x, B, q);
    for (int it = 0; it < 60; ++it) {
      DistResult d = dist_to_subspace_with_coeffs(T * x, B, q);
      VectorXd rvec = B.cols() > 0 ? VectorXd(T * x - B * d.coeffs) : VectorXd(T * x);
      VectorXd dir = T.transpose() * norm_subgradient(rvec, q);
      VectorXd xn = holder_extremizer(dir, p);
      const double vn = dist_to_subspace(T * xn, B, q);
      if (vn <= val * (1.0 + 1e-12)) break;
      val = vn;
      x = xn;
    }
    consider_point(best, T, B, q, x);
  }
  return best;
}

void polish_basis(const MatrixXd& T, MatrixXd& B, double& fv, const Exponent& p,
                  const Exponent& q, std::uint64_t eval_seed) {
  if (B.size() == 0) return;
  const double scale = std::max(1.0, B.cwiseAbs().maxCoeff());
  for (double rel : {1e-1, 3e-2, 1e-2, 3e-3, 1e-3}) {
    const double delta = rel * scale;
    for (int i = 0; i < B.rows(); ++i) {
      for (int j = 0; j < B.cols(); ++j) {
        for (double sgn : {1.0, -1.0}) {
          B(i, j) += sgn * delta;
          const double cand = quotient_sup(T, B, p, q, eval_seed).value;
          if (cand < fv) {
            fv = cand;
          } else {
            B(i, j) -= sgn * delta;
          }
        }
      }
    }
  }
}

SNumberResult kolmogorov_number_impl(const FiniteOperator& T, int k,
                                     const SolverConfig& cfg,
                                     const std::vector<MatrixXd>& warm_B) {
  if (k < 1) throw std::invalid_argument("kolmogorov_number: k must be >= 1");
  const MatrixXd& M = T.matrix();
  const int m = T.rows();
  const Exponent p = T.dom().p, q = T.cod().p;

  SNumberResult res;
  res.k = k;
  res.kind = SNumberKind::kolmogorov;

  if (k == 1) {
    NormEstimate est = operator_norm(T, cfg.seed);
    res.value = est.lower;
    res.witness = MatrixXd::Zero(m, 0);
    res.bound_side = est.is_exact() ? BoundSide::two_sided : BoundSide::lower;
    return res;
  }
  if (k > m) {
    res.value = 0.0;
    MatrixXd B = MatrixXd::Zero(m, k - 1);
    B.leftCols(m) = MatrixXd::Identity(m, m);
    res.witness = B;
    res.bound_side = BoundSide::two_sided;
    return res;
  }
  Eigen::JacobiSVD<MatrixXd> svd(M, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const int rank = numerical_rank(svd);
  if (rank < k) {
    MatrixXd B = MatrixXd::Zero(m, k - 1);
    B.leftCols(rank) = svd.matrixU().leftCols(rank);
    res.value = 0.0;
    res.witness = B;
    res.bound_side = BoundSide::two_sided;
    return res;
  }

  const int r = k - 1;
  const std::uint64_t eval_seed = detail::splitmix64(cfg.seed ^ 0xD0C);
  auto rng = detail::make_rng(cfg.seed, {0xD0C0, static_cast<std::uint64_t>(k)});

  std::vector<MatrixXd> seeds;
  seeds.push_back(svd.matrixU().leftCols(r));
  {
    // Coordinate subspace spanned by the largest rows.
    std::vector<int> order(m);
    for (int i = 0; i < m; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      return M.row(a).cwiseAbs().sum() > M.row(b).cwiseAbs().sum();
    });
    MatrixXd B = MatrixXd::Zero(m, r);
    for (int j = 0; j < r; ++j) B(order[j], j) = 1.0;
    seeds.push_back(B);
  }
  {
    // Range of the a_k approximant F: the quotient by span(F) is bounded by
    // ||T - F||, so this seed pins d_k below the reported a_k. Same budget
    // as the caller so the bound matches approximation_number exactly.
    SNumberResult ak = approximation_number_impl(T, k, cfg, {});
    seeds.push_back(factor_from_approximant(ak.witness, r).U);
  }
  for (const MatrixXd& B : warm_B) {
    MatrixXd W = MatrixXd::Zero(m, r);
    const int c = std::min<int>(r, B.cols());
    W.leftCols(c) = B.leftCols(c);
    seeds.push_back(W);
  }
  while (static_cast<int>(seeds.size()) < cfg.restarts)
    seeds.push_back(detail::gaussian_matrix(rng, m, r));

  double best = std::numeric_limits<double>::infinity();
  MatrixXd best_B;
  for (MatrixXd B : seeds) {
    B = orthonormal_columns(B);
    QuotientSup qs = quotient_sup(M, B, p, q, eval_seed);
    double fv = qs.value;
    double eta = -1.0;
    int stall = 0;
    for (int outer = 0; outer < cfg.outer_iterations && stall < 3; ++outer) {
      VectorXd uhat = norm_subgradient(qs.residual, q);
      MatrixXd G = -uhat * qs.coeffs.transpose();
      const double gn2 = G.squaredNorm();
      if (gn2 <= 1e-300) break;
      if (eta < 0.0) eta = fv / gn2;
      bool accepted = false;
      for (int bt = 0; bt < 8; ++bt) {
        MatrixXd cand = orthonormal_columns(B - eta * G);
        QuotientSup cs = quotient_sup(M, cand, p, q, eval_seed);
        if (cs.value < fv) {
          const bool significant = fv - cs.value > cfg.rel_tol * std::max(1.0, fv);
          B = cand;
          qs = cs;
          fv = cs.value;
          eta *= 1.4;
          accepted = true;
          stall = significant ? 0 : stall + 1;
          break;
        }
        eta *= 0.5;
      }
      if (!accepted) ++stall;
    }
    if (fv < best) {
      best = fv;
      best_B = B;
    }
  }
  polish_basis(M, best_B, best, p, q, eval_seed);

  res.value = best;
  res.witness = best_B;
  res.bound_side = BoundSide::upper;
  return res;
}

// ---------------------------------------------------------------------------
// Gelfand numbers: descent over domain subspaces, parameterized by an
// orthonormal basis Z of the subspace itself
// ---------------------------------------------------------------------------

struct ConstrainedSup {
  double value = 0.0;
  VectorXd x;  // achieving point, x in span(Z), ||x||_p <= 1
};

void consider_constrained(ConstrainedSup& best, const MatrixXd& T,
                          const Exponent& p, const Exponent& q,
                          const VectorXd& x_raw) {
  const double nx = vector_norm(x_raw, p);
  if (nx <= 0.0) return;
  const VectorXd x = x_raw / nx;
  const double v = vector_norm(T * x, q);
  if (v > best.value) {
    best.value = v;
    best.x = x;
  }
}

// sup{||Tx||_q : x in span(Z), ||x||_p <= 1}. Exact for p = 2 via the
// compressed matrix T Z, and for p in {1, inf} at small dimension via
// vertex enumeration of the sliced ball; ascent otherwise.
ConstrainedSup constrained_sup(const MatrixXd& T, const MatrixXd& Z,
                               const Exponent& p, const Exponent& q,
                               std::uint64_t eval_seed) {
  const int n = static_cast<int>(T.cols());
  const int d = static_cast<int>(Z.cols());
  ConstrainedSup best;
  best.x = VectorXd::Zero(n);
  if (d == 0) return best;

  if (p.is(2.0)) {
    NormWitness nw =
        norm_with_witness(T * Z, Exponent::two(), q, eval_seed);
    best.value = nw.value;
    best.x = Z * nw.x;
    return best;
  }
  if (p.is_inf() && n <= 16) {
    // Vertices of the slice have d coordinates pinned to +-1.
    std::vector<int> idx(d);
    std::function<void(int, int)> rec = [&](int start, int depth) {
      if (depth == d) {
        MatrixXd Zi(d, d);
        for (int i = 0; i < d; ++i) Zi.row(i) = Z.row(idx[i]);
        Eigen::FullPivLU<MatrixXd> lu(Zi);
        if (!lu.isInvertible()) return;
        VectorXd sigma(d);
        for (unsigned mask = 0; mask < (1u << (d - 1)); ++mask) {
          sigma(0) = 1.0;
          for (int i = 1; i < d; ++i)
            sigma(i) = (mask >> (i - 1)) & 1u ? -1.0 : 1.0;
          VectorXd w = lu.solve(sigma);
          consider_constrained(best, T, p, q, Z * w);
        }
        return;
      }
      for (int i = start; i <= n - (d - depth); ++i) {
        idx[depth] = i;
        rec(i + 1, depth + 1);
      }
    };
    rec(0, 0);
    if (best.value > 0.0) return best;
  }
  if (p.is(1.0) && n <= 16) {
    // Vertices of the sliced cross-polytope are supported on at most
    // n - d + 1 coordinates.
    const int support = n - d + 1;
    std::vector<int> idx(support);
    std::function<void(int, int)> rec = [&](int start, int depth) {
      if (depth == support) {
        std::vector<bool> in(n, false);
        for (int i : idx) in[i] = true;
        MatrixXd Zc(n - support, d);
        int row = 0;
        for (int i = 0; i < n; ++i)
          if (!in[i]) Zc.row(row++) = Z.row(i);
        Eigen::FullPivLU<MatrixXd> lu(Zc);
        MatrixXd ker = lu.kernel();
        for (int c = 0; c < ker.cols(); ++c)
          consider_constrained(best, T, p, q, Z * ker.col(c));
        return;
      }
      for (int i = start; i <= n - (support - depth); ++i) {
        idx[depth] = i;
        rec(i + 1, depth + 1);
      }
    };
    rec(0, 0);
    if (best.value > 0.0) return best;
  }

  // Ascent in the w coordinates with projection back to the sliced sphere.
  auto rng = detail::make_rng(eval_seed, {0xCE});
  std::vector<VectorXd> starts;
  for (int j = 0; j < std::min(d, 6); ++j) starts.push_back(VectorXd::Unit(d, j));
  for (int t = 0; t < 6; ++t) starts.push_back(detail::gaussian_vector(rng, d));
  for (VectorXd w : starts) {
    VectorXd x = Z * w;
    double nx = vector_norm(x, p);
    if (nx == 0.0) continue;
    w /= nx;
    double val = vector_norm(T * Z * w, q);
    double eta = 0.5;
    for (int it = 0; it < 80; ++it) {
      VectorXd g = Z.transpose() *
                   (T.transpose() * norm_subgradient(T * (Z * w), q));
      VectorXd wn = w + eta * g;
      VectorXd xn = Z * wn;
      const double nxn = vector_norm(xn, p);
      if (nxn == 0.0) break;
      wn /= nxn;
      const double vn = vector_norm(T * (Z * wn), q);
      if (vn > val) {
        val = vn;
        w = wn;
        eta *= 1.2;
      } else {
        eta *= 0.5;
        if (eta < 1e-12) break;
      }
    }
    consider_constrained(best, T, p, q, Z * w);
  }
  return best;
}

void polish_slice(const MatrixXd& T, MatrixXd& Z, double& fv, const Exponent& p,
                  const Exponent& q, std::uint64_t eval_seed) {
  if (Z.size() == 0) return;
  for (double delta : {1e-1, 3e-2, 1e-2, 3e-3, 1e-3}) {
    for (int i = 0; i < Z.rows(); ++i) {
      for (int j = 0; j < Z.cols(); ++j) {
        for (double sgn : {1.0, -1.0}) {
          MatrixXd cand = Z;
          cand(i, j) += sgn * delta;
          cand = orthonormal_columns(cand);
          const double cv = constrained_sup(T, cand, p, q, eval_seed).value;
          if (cv < fv) {
            fv = cv;
            Z = cand;
          }
        }
      }
    }
  }
}

// Constraint matrix whose kernel is span(Z): the orthonormal complement.
MatrixXd complement_rows(const MatrixXd& Z) {
  const int n = static_cast<int>(Z.rows());
  const int d = static_cast<int>(Z.cols());
  Eigen::HouseholderQR<MatrixXd> qr(Z);
  MatrixXd Q = qr.householderQ();
  return Q.rightCols(n - d).transpose();
}

SNumberResult gelfand_number_impl(const FiniteOperator& T, int k,
                                  const SolverConfig& cfg,
                                  const std::vector<MatrixXd>& warm_Z) {
  if (k < 1) throw std::invalid_argument("gelfand_number: k must be >= 1");
  const MatrixXd& M = T.matrix();
  const int n = T.cols();
  const Exponent p = T.dom().p, q = T.cod().p;

  SNumberResult res;
  res.k = k;
  res.kind = SNumberKind::gelfand;

  if (k == 1) {
    NormEstimate est = operator_norm(T, cfg.seed);
    res.value = est.lower;
    res.witness = MatrixXd::Zero(0, n);
    res.bound_side = est.is_exact() ? BoundSide::two_sided : BoundSide::lower;
    return res;
  }
  if (k > n) {
    res.value = 0.0;
    MatrixXd A = MatrixXd::Zero(k - 1, n);
    A.topRows(n) = MatrixXd::Identity(n, n);
    res.witness = A;
    res.bound_side = BoundSide::two_sided;
    return res;
  }
  Eigen::JacobiSVD<MatrixXd> svd(M, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const int rank = numerical_rank(svd);
  if (rank < k) {
    // Restrict to the kernel of T: codim = rank < k and the sup vanishes.
    MatrixXd A = MatrixXd::Zero(k - 1, n);
    A.topRows(rank) = svd.matrixV().leftCols(rank).transpose();
    res.value = 0.0;
    res.witness = A;
    res.bound_side = BoundSide::two_sided;
    return res;
  }

  const int d = n - k + 1;
  const std::uint64_t eval_seed = detail::splitmix64(cfg.seed ^ 0xCE1);
  auto rng = detail::make_rng(cfg.seed, {0xCE10, static_cast<std::uint64_t>(k)});

  std::vector<MatrixXd> seeds;
  seeds.push_back(svd.matrixV().rightCols(d));
  {
    // Coordinate slice dropping the heaviest columns.
    std::vector<int> order(n);
    for (int j = 0; j < n; ++j) order[j] = j;
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      return M.col(a).cwiseAbs().sum() > M.col(b).cwiseAbs().sum();
    });
    MatrixXd Z = MatrixXd::Zero(n, d);
    for (int j = 0; j < d; ++j) Z(order[k - 1 + j], j) = 1.0;
    seeds.push_back(Z);
  }
  {
    // Kernel of the a_k approximant F: T agrees with T - F there, so this
    // seed pins c_k below the reported a_k (same budget as the caller).
    SNumberResult ak = approximation_number_impl(T, k, cfg, {});
    Eigen::JacobiSVD<MatrixXd> fsvd(ak.witness, Eigen::ComputeFullV);
    const int fr = numerical_rank(fsvd);
    MatrixXd Z = MatrixXd::Zero(n, d);
    const int avail = n - fr;
    Z.leftCols(std::min(d, avail)) =
        fsvd.matrixV().rightCols(avail).leftCols(std::min(d, avail));
    seeds.push_back(Z);
  }
  for (const MatrixXd& Zw : warm_Z) {
    // A warm start from a wider slice: greedily drop columns, which can
    // only shrink the subspace and therefore never increases the sup.
    MatrixXd Z = Zw;
    while (Z.cols() > d) {
      double bestv = std::numeric_limits<double>::infinity();
      int drop = 0;
      for (int j = 0; j < Z.cols(); ++j) {
        MatrixXd cand(Z.rows(), Z.cols() - 1);
        cand << Z.leftCols(j), Z.rightCols(Z.cols() - 1 - j);
        const double v = constrained_sup(M, cand, p, q, eval_seed).value;
        if (v < bestv) {
          bestv = v;
          drop = j;
        }
      }
      MatrixXd next(Z.rows(), Z.cols() - 1);
      next << Z.leftCols(drop), Z.rightCols(Z.cols() - 1 - drop);
      Z = next;
    }
    if (Z.cols() == d) seeds.push_back(Z);
  }
  while (static_cast<int>(seeds.size()) < cfg.restarts)
    seeds.push_back(detail::gaussian_matrix(rng, n, d));

  double best = std::numeric_limits<double>::infinity();
  MatrixXd best_Z;
  for (MatrixXd Z : seeds) {
    Z = orthonormal_columns(Z);
    ConstrainedSup cs = constrained_sup(M, Z, p, q, eval_seed);
    double fv = cs.value;
    double eta = -1.0;
    int stall = 0;
    for (int outer = 0; outer < cfg.outer_iterations && stall < 3; ++outer) {
      const VectorXd u = norm_subgradient(M * cs.x, q);
      const VectorXd v = norm_subgradient(cs.x, p);
      const VectorXd w = Z.transpose() * cs.x;
      MatrixXd G = (M.transpose() * u - fv * v) * w.transpose();
      const double gn2 = G.squaredNorm();
      if (gn2 <= 1e-300) break;
      if (eta < 0.0) eta = std::max(fv, 1e-6) / gn2;
      bool accepted = false;
      for (int bt = 0; bt < 8; ++bt) {
        MatrixXd cand = orthonormal_columns(Z - eta * G);
        ConstrainedSup cc = constrained_sup(M, cand, p, q, eval_seed);
        if (cc.value < fv) {
          const bool significant = fv - cc.value > cfg.rel_tol * std::max(1.0, fv);
          Z = cand;
          cs = cc;
          fv = cc.value;
          eta *= 1.4;
          accepted = true;
          stall = significant ? 0 : stall + 1;
          break;
        }
        eta *= 0.5;
      }
      if (!accepted) ++stall;
    }
    if (fv < best) {
      best = fv;
      best_Z = Z;
    }
  }
  polish_slice(M, best_Z, best, p, q, eval_seed);

  res.value = best;
  res.witness = complement_rows(best_Z);
  res.bound_side = BoundSide::upper;
  return res;
}

// ---------------------------------------------------------------------------
// Weyl and Chang numbers: randomized ascent over Hilbert-space contractions
// ---------------------------------------------------------------------------

SNumberResult contraction_sup_impl(const FiniteOperator& T, int k,
                                   const SolverConfig& cfg, bool weyl_side) {
  const char* name = weyl_side ? "weyl_number" : "chang_number";
  if (k < 1) throw std::invalid_argument(std::string(name) + ": k must be >= 1");
  const int m = T.rows(), n = T.cols();
  const Exponent p = T.dom().p, q = T.cod().p;
  const int dim = weyl_side ? n : m;  // contraction acts on this side

  SNumberResult res;
  res.k = k;
  res.kind = weyl_side ? SNumberKind::weyl : SNumberKind::chang;
  res.bound_side = BoundSide::lower;

  Eigen::JacobiSVD<MatrixXd> svd(T.matrix());
  if (k > std::min(m, n) || numerical_rank(svd) < k) {
    res.value = 0.0;
    res.witness = MatrixXd::Zero(dim, dim);
    return res;
  }

  // The contraction side is a Hilbert space, so rank-one compositions with
  // the norm witness realize s_1 = ||T|| exactly.
  if (k == 1) {
    NormEstimate est = operator_norm(T, cfg.seed);
    res.value = est.lower;
    if (weyl_side) {
      res.witness = est.witness * Eigen::RowVectorXd::Unit(n, 0);
    } else {
      const VectorXd u = norm_subgradient(T.matrix() * est.witness, q);
      res.witness = VectorXd::Unit(m, 0) * u.transpose();
    }
    res.bound_side = est.is_exact() ? BoundSide::two_sided : BoundSide::lower;
    return res;
  }

  SolverConfig lite = cfg;
  lite.restarts = std::max(4, cfg.restarts / 4);
  lite.outer_iterations = std::max(40, cfg.outer_iterations / 4);

  // Contractions map from (weyl) or to (chang) the Hilbert side.
  const Exponent from = weyl_side ? Exponent::two() : q;
  const Exponent to = weyl_side ? p : Exponent::two();
  auto contraction_normalize = [&](const MatrixXd& C) {
    FiniteOperator op(C, NormedSpace(dim, from), NormedSpace(dim, to));
    const double nc = operator_norm(op, cfg.seed).lower;
    return nc > 0.0 ? MatrixXd(C / nc) : C;
  };
  auto evaluate = [&](const MatrixXd& C) {
    FiniteOperator cop(C, NormedSpace(dim, from), NormedSpace(dim, to));
    FiniteOperator composed = weyl_side ? compose(T, cop) : compose(cop, T);
    return approximation_number_impl(composed, k, lite, {}).value;
  };

  auto rng = detail::make_rng(cfg.seed, {weyl_side ? 0x3E1ull : 0xC4Aull,
                                         static_cast<std::uint64_t>(k)});
  std::vector<MatrixXd> pool;
  pool.push_back(contraction_normalize(MatrixXd::Identity(dim, dim)));
  for (int i = 0; i < std::min(dim, 4); ++i) {
    MatrixXd sel = MatrixXd::Zero(dim, dim);
    sel(i, i) = 1.0;
    pool.push_back(contraction_normalize(sel));
  }
  const int extra = std::max(cfg.restarts - static_cast<int>(pool.size()), 4);
  for (int t = 0; t < extra; ++t)
    pool.push_back(contraction_normalize(detail::gaussian_matrix(rng, dim, dim)));

  double best = 0.0;
  MatrixXd best_C = pool.front();
  for (const MatrixXd& C : pool) {
    const double v = evaluate(C);
    if (v > best) {
      best = v;
      best_C = C;
    }
  }
  double delta = 0.4;
  for (int it = 0; it < 20; ++it) {
    MatrixXd C = contraction_normalize(best_C + delta *
                                       detail::gaussian_matrix(rng, dim, dim));
    const double v = evaluate(C);
    if (v > best) {
      best = v;
      best_C = C;
      delta *= 1.1;
    } else {
      delta = std::max(delta * 0.7, 1e-4);
    }
  }

  // The composition can never beat a_k(T); clamp estimation noise away.
  const double ak_ref = approximation_number_impl(T, k, cfg, {}).value;
  res.value = std::min(best, ak_ref);
  res.witness = best_C;
  return res;
}

}  // namespace

SNumberResult approximation_number(const FiniteOperator& T, int k,
                                   const SolverConfig& cfg) {
  return approximation_number_impl(T, k, cfg, {});
}

SNumberResult kolmogorov_number(const FiniteOperator& T, int k,
                                const SolverConfig& cfg) {
  return kolmogorov_number_impl(T, k, cfg, {});
}

SNumberResult gelfand_number(const FiniteOperator& T, int k,
                             const SolverConfig& cfg) {
  return gelfand_number_impl(T, k, cfg, {});
}

SNumberResult weyl_number(const FiniteOperator& T, int k,
                          const SolverConfig& cfg) {
  return contraction_sup_impl(T, k, cfg, true);
}

SNumberResult chang_number(const FiniteOperator& T, int k,
                           const SolverConfig& cfg) {
  return contraction_sup_impl(T, k, cfg, false);
}

double kolmogorov_via_ak(const FiniteOperator& T, int k, bool extreme_points,
                         const SolverConfig& cfg) {
  const Exponent p = T.dom().p;
  const int n = T.cols();
  if (!p.is(1.0) && !p.is_inf())
    throw std::domain_error(
        "kolmogorov_via_ak: domain exponent must be 1 or inf");

  MatrixXd E;
  if (p.is(1.0)) {
    E.resize(n, 2 * n);
    E << MatrixXd::Identity(n, n), -MatrixXd::Identity(n, n);
  } else if (extreme_points) {
    if (n > 12)
      throw std::invalid_argument(
          "kolmogorov_via_ak: 2^n extreme points infeasible beyond n = 12");
    const int N = 1 << n;
    E.resize(n, N);
    for (int c = 0; c < N; ++c)
      for (int i = 0; i < n; ++i) E(i, c) = (c >> i) & 1 ? -1.0 : 1.0;
  } else {
    // Deterministic sample of the sign vectors for large n.
    auto rng = detail::make_rng(cfg.seed, {0xE0});
    const int N = std::min(1 << std::min(n, 20), 2 * n * n + 16);
    E.resize(n, N);
    E.col(0) = VectorXd::Ones(n);
    std::uniform_int_distribution<int> coin(0, 1);
    for (int c = 1; c < N; ++c)
      for (int i = 0; i < n; ++i) E(i, c) = coin(rng) ? 1.0 : -1.0;
  }
  FiniteOperator TE(T.matrix() * E,
                    NormedSpace(static_cast<int>(E.cols()), Exponent::one()),
                    T.cod());
  return approximation_number_impl(TE, k, cfg, {}).value;
}

double gelfand_via_ak(const FiniteOperator& T, int k, int functional_net,
                      const SolverConfig& cfg) {
  const Exponent q = T.cod().p;
  const int m = T.rows();

  MatrixXd F;
  if (q.is_inf()) {
    // Dual ball is the l^1 ball: extreme functionals are +-coordinates.
    F.resize(2 * m, m);
    F << MatrixXd::Identity(m, m), -MatrixXd::Identity(m, m);
  } else if (q.is(1.0)) {
    // Dual ball is the l^inf ball: extreme functionals are sign vectors.
    if (m > 12)
      throw std::invalid_argument(
          "gelfand_via_ak: 2^m extreme functionals infeasible beyond m = 12");
    const int N = 1 << m;
    F.resize(N, m);
    for (int r = 0; r < N; ++r)
      for (int i = 0; i < m; ++i) F(r, i) = (r >> i) & 1 ? -1.0 : 1.0;
  } else {
    if (functional_net < 1)
      throw std::domain_error(
          "gelfand_via_ak: exact mode requires codomain exponent 1 or inf");
    const Exponent qd = q.dual();
    auto rng = detail::make_rng(cfg.seed, {0xF0});
    F.resize(functional_net, m);
    for (int r = 0; r < functional_net; ++r) {
      VectorXd f = detail::gaussian_vector(rng, m);
      const double nf = vector_norm(f, qd);
      F.row(r) = nf > 0.0 ? VectorXd(f / nf).transpose() : f.transpose();
    }
  }
  FiniteOperator FT(F * T.matrix(), T.dom(),
                    NormedSpace(static_cast<int>(F.rows()), Exponent::inf()));
  return approximation_number_impl(FT, k, cfg, {}).value;
}

SNumberResult s_number(const FiniteOperator& T, int k, SNumberKind kind,
                       const SolverConfig& cfg) {
  switch (kind) {
    case SNumberKind::approximation: return approximation_number(T, k, cfg);
    case SNumberKind::kolmogorov: return kolmogorov_number(T, k, cfg);
    case SNumberKind::gelfand: return gelfand_number(T, k, cfg);
    case SNumberKind::weyl: return weyl_number(T, k, cfg);
    case SNumberKind::chang: return chang_number(T, k, cfg);
  }
  throw std::invalid_argument("s_number: unknown kind");
}

std::vector<SNumberResult> s_number_sweep(const FiniteOperator& T,
                                          SNumberKind kind,
                                          const std::vector<int>& ks,
                                          const SolverConfig& cfg) {
  for (std::size_t i = 0; i < ks.size(); ++i) {
    if (ks[i] < 1 || (i > 0 && ks[i] <= ks[i - 1]))
      throw std::invalid_argument("s_number_sweep: ks must be increasing and >= 1");
  }
  std::vector<SNumberResult> out;
  out.reserve(ks.size());
  std::vector<MatrixXd> warm;
  for (int k : ks) {
    SNumberResult r;
    switch (kind) {
      case SNumberKind::approximation:
        r = approximation_number_impl(T, k, cfg, warm);
        warm = {r.witness};
        break;
      case SNumberKind::kolmogorov:
        r = kolmogorov_number_impl(T, k, cfg, warm);
        warm = {r.witness};
        break;
      case SNumberKind::gelfand: {
        r = gelfand_number_impl(T, k, cfg, warm);
        // Witness is the constraint matrix; warm-start from its kernel.
        Eigen::FullPivLU<MatrixXd> lu(r.witness);
        warm = {lu.kernel()};
        break;
      }
      case SNumberKind::weyl:
        r = weyl_number(T, k, cfg);
        break;
      case SNumberKind::chang:
        r = chang_number(T, k, cfg);
        break;
    }
    // Warm starts make inf-type scans nonincreasing by construction; the
    // clamp only mops up float noise.
    if (!out.empty() && r.value > out.back().value &&
        (kind == SNumberKind::approximation ||
         kind == SNumberKind::kolmogorov || kind == SNumberKind::gelfand)) {
      r.value = out.back().value;
    }
    out.push_back(std::move(r));
  }
  // sup-type scans are repaired right-to-left: a certificate for k+1 is
  // also a certificate for k.
  if (kind == SNumberKind::weyl || kind == SNumberKind::chang) {
    for (int i = static_cast<int>(out.size()) - 2; i >= 0; --i) {
      if (out[i].value < out[i + 1].value) {
        out[i].value = out[i + 1].value;
        out[i].witness = out[i + 1].witness;
      }
    }
  }
  return out;
}

}  // namespace snlab
