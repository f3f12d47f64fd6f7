#include "snlab/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include "snlab/opnorm.hpp"

namespace snlab {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

void check_dims(const FiniteOperator& T, int k, const char* name) {
  if (k < 1) throw std::invalid_argument(std::string(name) + ": k must be >= 1");
  if (k > 4 || std::max(T.rows(), T.cols()) > 6)
    throw std::invalid_argument(std::string(name) +
                                ": oracle is limited to dims <= 6 and k <= 4");
}

// Norm of M : l^p -> l^q through the exactly evaluable branches, falling
// back to dense sphere sampling otherwise. Exact wherever the structured
// solver also has a closed form, so oracle upper bounds stay valid there.
double oracle_norm_eval(const MatrixXd& M, const Exponent& p, const Exponent& q,
                        std::uint64_t seed) {
  const int n = static_cast<int>(M.cols());
  if (M.size() == 0 || M.isZero(0.0)) return 0.0;
  if (p.is(1.0)) {
    double best = 0.0;
    for (int j = 0; j < n; ++j) best = std::max(best, vector_norm(M.col(j), q));
    return best;
  }
  if (q.is_inf()) {
    const Exponent pd = p.dual();
    double best = 0.0;
    for (int i = 0; i < M.rows(); ++i)
      best = std::max(best, vector_norm(M.row(i).transpose(), pd));
    return best;
  }
  if (p.is_inf() && n <= 16) {
    double best = 0.0;
    VectorXd s(n);
    for (std::uint64_t mask = 0; mask < (1ULL << (n - 1)); ++mask) {
      s(0) = 1.0;
      for (int i = 1; i < n; ++i) s(i) = (mask >> (i - 1)) & 1ULL ? -1.0 : 1.0;
      best = std::max(best, vector_norm(M * s, q));
    }
    return best;
  }
  if (p.is(2.0) && q.is(2.0)) {
    Eigen::JacobiSVD<MatrixXd> svd(M);
    return svd.singularValues()(0);
  }
  // Off the exactly evaluable grid this is best effort only; callers that
  // need certified directions are rejected elsewhere.
  FiniteOperator op(M, NormedSpace(n, p),
                    NormedSpace(static_cast<int>(M.rows()), q));
  return oracle_operator_norm(op, 800, seed);
}

// Greedy coordinate descent over a parameter vector at geometrically
// shrinking steps; `evaluate` must be a pure function of the parameters.
void coordinate_polish(std::vector<double*> params, double& best,
                       const std::function<double()>& evaluate,
                       int polish_steps, double scale) {
  if (params.empty() || polish_steps <= 0) return;
  int sweeps = 0;
  for (double delta = 0.25 * scale; delta > 1e-8 * scale; delta *= 0.5) {
    bool improved_pass = true;
    for (int pass = 0; pass < 3 && improved_pass; ++pass) {
      improved_pass = false;
      for (double* v : params) {
        for (double sgn : {1.0, -1.0}) {
          *v += sgn * delta;
          const double cand = evaluate();
          if (cand < best) {
            best = cand;
            improved_pass = true;
          } else {
            *v -= sgn * delta;
          }
        }
      }
      if (++sweeps >= polish_steps) return;
    }
  }
}

std::vector<double*> matrix_params(MatrixXd& M) {
  std::vector<double*> out;
  out.reserve(M.size());
  for (int j = 0; j < M.cols(); ++j)
    for (int i = 0; i < M.rows(); ++i) out.push_back(&M(i, j));
  return out;
}

// Exact inner sup for the Kolmogorov objective; throws when no exactly
// evaluable branch exists (the oracle must not report an under-estimated
// sup for an inf-type quantity).
double kolmogorov_objective(const MatrixXd& T, const MatrixXd& B,
                            const Exponent& p, const Exponent& q) {
  const int n = static_cast<int>(T.cols());
  if (p.is(1.0)) {
    double best = 0.0;
    for (int j = 0; j < n; ++j)
      best = std::max(best, dist_to_subspace(T.col(j), B, q));
    return best;
  }
  if (p.is_inf() && n <= 16) {
    double best = 0.0;
    VectorXd s(n);
    for (std::uint64_t mask = 0; mask < (1ULL << (n - 1)); ++mask) {
      s(0) = 1.0;
      for (int i = 1; i < n; ++i) s(i) = (mask >> (i - 1)) & 1ULL ? -1.0 : 1.0;
      best = std::max(best, dist_to_subspace(T * s, B, q));
    }
    return best;
  }
  if (p.is(2.0) && q.is(2.0)) {
    Eigen::HouseholderQR<MatrixXd> qr(B);
    MatrixXd Q = qr.householderQ() * MatrixXd::Identity(B.rows(), B.cols());
    MatrixXd P = T - Q * (Q.transpose() * T);
    Eigen::JacobiSVD<MatrixXd> svd(P);
    return svd.singularValues()(0);
  }
  throw std::domain_error(
      "oracle_kolmogorov_number: no exactly evaluable inner sup for these "
      "exponents");
}

// Exact inner sup for the Gelfand objective over ker(A); same exactness
// contract as above.
double gelfand_objective(const MatrixXd& T, const MatrixXd& A,
                         const Exponent& p, const Exponent& q) {
  const int n = static_cast<int>(T.cols());
  Eigen::FullPivLU<MatrixXd> lu(A);
  MatrixXd Z = lu.kernel();  // n x d
  if (A.isZero(0.0)) Z = MatrixXd::Identity(n, n);
  const int d = static_cast<int>(Z.cols());

  if (p.is(2.0) && (q.is(2.0) || q.is_inf())) {
    Eigen::HouseholderQR<MatrixXd> qr(Z);
    MatrixXd Zo = qr.householderQ() * MatrixXd::Identity(n, d);
    return oracle_norm_eval(T * Zo, Exponent::two(), q, 0);
  }
  if (p.is_inf() && n <= 16) {
    double best = 0.0;
    std::vector<int> idx(d);
    std::function<void(int, int)> rec = [&](int start, int depth) {
      if (depth == d) {
        MatrixXd Zi(d, d);
        for (int i = 0; i < d; ++i) Zi.row(i) = Z.row(idx[i]);
        Eigen::FullPivLU<MatrixXd> sub(Zi);
        if (!sub.isInvertible()) return;
        VectorXd sigma(d);
        for (unsigned mask = 0; mask < (1u << (d - 1)); ++mask) {
          sigma(0) = 1.0;
          for (int i = 1; i < d; ++i)
            sigma(i) = (mask >> (i - 1)) & 1u ? -1.0 : 1.0;
          VectorXd x = Z * sub.solve(sigma);
          const double nx = vector_norm(x, Exponent::inf());
          if (nx > 0.0)
            best = std::max(best, vector_norm(T * (x / nx), q));
        }
        return;
      }
      for (int i = start; i <= n - (d - depth); ++i) {
        idx[depth] = i;
        rec(i + 1, depth + 1);
      }
    };
    rec(0, 0);
    return best;
  }
  if (p.is(1.0) && n <= 16) {
    double best = 0.0;
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
        Eigen::FullPivLU<MatrixXd> sub(Zc);
        MatrixXd ker = sub.kernel();
        for (int c = 0; c < ker.cols(); ++c) {
          VectorXd x = Z * ker.col(c);
          const double nx = vector_norm(x, Exponent::one());
          if (nx > 0.0) best = std::max(best, vector_norm(T * (x / nx), q));
        }
        return;
      }
      for (int i = start; i <= n - (support - depth); ++i) {
        idx[depth] = i;
        rec(i + 1, depth + 1);
      }
    };
    rec(0, 0);
    return best;
  }
  throw std::domain_error(
      "oracle_gelfand_number: no exactly evaluable inner sup for these "
      "exponents");
}

}  // namespace

double oracle_approximation_number(const FiniteOperator& T, int k,
                                   const OracleBudget& budget) {
  check_dims(T, k, "oracle_approximation_number");
  const MatrixXd& M = T.matrix();
  const int m = T.rows(), n = T.cols();
  const Exponent p = T.dom().p, q = T.cod().p;
  if (k > std::min(m, n)) return 0.0;
  const int r = k - 1;
  const std::uint64_t eval_seed = detail::splitmix64(budget.seed ^ 0x0AC1E);
  if (r == 0) return oracle_norm_eval(M, p, q, eval_seed);

  auto rng = detail::make_rng(budget.seed, {0x0AC1E, static_cast<std::uint64_t>(k)});
  const double tnorm = std::max(M.norm(), 1e-300);
  const double scale = std::sqrt(tnorm);

  struct Candidate {
    double value;
    MatrixXd U, V;
  };
  auto polish_candidate = [&](Candidate& c, int steps) {
    auto evaluate = [&]() {
      return oracle_norm_eval(M - c.U * c.V, p, q, eval_seed);
    };
    std::vector<double*> params = matrix_params(c.U);
    for (double* ptr : matrix_params(c.V)) params.push_back(ptr);
    coordinate_polish(params, c.value, evaluate, steps, scale);
  };

  // Every sample gets a short coordinate-descent pass; the best few
  // finalists get the full schedule. Ties between rows/columns stall
  // single-coordinate moves, so a wide field of polished starts matters
  // more than one deeply polished winner.
  std::vector<Candidate> finalists;
  finalists.push_back({oracle_norm_eval(M, p, q, eval_seed),
                       MatrixXd::Zero(m, r), MatrixXd::Zero(r, n)});
  auto offer = [&](Candidate c) {
    finalists.push_back(std::move(c));
    std::sort(finalists.begin(), finalists.end(),
              [](const Candidate& a, const Candidate& b) {
                return a.value < b.value;
              });
    if (finalists.size() > 8) finalists.resize(8);
  };
  for (int s = 0; s < budget.samples; ++s) {
    MatrixXd U = detail::gaussian_matrix(rng, m, r);
    MatrixXd V = detail::gaussian_matrix(rng, r, n);
    const double fnorm = std::max((U * V).norm(), 1e-300);
    Candidate best_mag{std::numeric_limits<double>::infinity(), U, V};
    for (double mag : {0.25, 0.5, 1.0, 2.0}) {
      const double a = std::sqrt(mag * tnorm / fnorm);
      const double v = oracle_norm_eval(M - (a * U) * (a * V), p, q, eval_seed);
      if (v < best_mag.value) best_mag = {v, a * U, a * V};
    }
    polish_candidate(best_mag, 2);
    offer(std::move(best_mag));
  }
  double best = std::numeric_limits<double>::infinity();
  for (Candidate& c : finalists) {
    polish_candidate(c, budget.polish_steps);
    best = std::min(best, c.value);
  }
  return best;
}

double oracle_kolmogorov_number(const FiniteOperator& T, int k,
                                const OracleBudget& budget) {
  check_dims(T, k, "oracle_kolmogorov_number");
  const MatrixXd& M = T.matrix();
  const int m = T.rows();
  const Exponent p = T.dom().p, q = T.cod().p;
  const std::uint64_t eval_seed = detail::splitmix64(budget.seed ^ 0x0DC1E);
  if (k == 1) return oracle_norm_eval(M, p, q, eval_seed);
  if (k > m) return 0.0;
  const int r = k - 1;

  auto rng = detail::make_rng(budget.seed, {0x0DC1E, static_cast<std::uint64_t>(k)});
  double best = std::numeric_limits<double>::infinity();
  MatrixXd bestB;
  for (int s = 0; s < budget.samples; ++s) {
    MatrixXd B = detail::gaussian_matrix(rng, m, r);
    const double v = kolmogorov_objective(M, B, p, q);
    if (v < best) {
      best = v;
      bestB = B;
    }
  }
  MatrixXd B = bestB;
  auto evaluate = [&]() { return kolmogorov_objective(M, B, p, q); };
  coordinate_polish(matrix_params(B), best, evaluate, budget.polish_steps, 1.0);
  return best;
}

double oracle_gelfand_number(const FiniteOperator& T, int k,
                             const OracleBudget& budget) {
  check_dims(T, k, "oracle_gelfand_number");
  const MatrixXd& M = T.matrix();
  const int n = T.cols();
  const Exponent p = T.dom().p, q = T.cod().p;
  const std::uint64_t eval_seed = detail::splitmix64(budget.seed ^ 0x0CC1E);
  if (k == 1) return oracle_norm_eval(M, p, q, eval_seed);
  if (k > n) return 0.0;
  const int r = k - 1;

  auto rng = detail::make_rng(budget.seed, {0x0CC1E, static_cast<std::uint64_t>(k)});
  double best = std::numeric_limits<double>::infinity();
  MatrixXd bestA;
  for (int s = 0; s < budget.samples; ++s) {
    MatrixXd A = detail::gaussian_matrix(rng, r, n);
    const double v = gelfand_objective(M, A, p, q);
    if (v < best) {
      best = v;
      bestA = A;
    }
  }
  MatrixXd A = bestA;
  auto evaluate = [&]() { return gelfand_objective(M, A, p, q); };
  coordinate_polish(matrix_params(A), best, evaluate, budget.polish_steps, 1.0);
  return best;
}

}  // namespace snlab
