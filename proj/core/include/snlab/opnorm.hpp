#pragma once

#include <optional>

#include "snlab/detail/random.hpp"
#include "snlab/operators.hpp"

namespace snlab {

// Estimate of ||T||_{p->q} = sup{||Tx||_q : ||x||_p <= 1}.
//
// `lower` is always a certified lower bound realized by `witness`
// (||witness||_p <= 1). `upper` is present exactly when a closed form made
// the value two-sided; computing the norm for general (p,q) is NP-hard, so
// the optimized path only certifies from below.
struct NormEstimate {
  enum class Method { exact, optimized };
  double lower = 0.0;
  std::optional<double> upper;
  Eigen::VectorXd witness;
  Method method = Method::exact;

  bool is_exact() const { return method == Method::exact; }
};

// Closed forms: p=1 (max column q-norm), q=inf (max row p'-norm),
// (p,q)=(2,2) (largest singular value). Everything else runs multi-restart
// projected ascent (dual-sign power iteration for p->q norms) from the
// canonical basis vectors plus seeded random sphere points: 32 restarts,
// 500 iterations, relative-change stop at 1e-12.
NormEstimate operator_norm(const FiniteOperator& T,
                           std::uint64_t seed = detail::kDefaultSeed);

// Same computation with an explicit restart/iteration schedule for the
// ascent path; solver inner loops evaluate thousands of norms and use a
// lighter budget than the public default. Closed-form branches are
// unaffected.
NormEstimate operator_norm_budget(const FiniteOperator& T, int restarts,
                                  int max_iterations, std::uint64_t seed);

// Independent verification sampler. Exact for p in {1, inf} (the unit ball
// has finitely many extreme points); otherwise dense sampling of the l^p
// sphere followed by local polish. Always a valid lower bound.
double oracle_operator_norm(const FiniteOperator& T, int budget,
                            std::uint64_t seed = detail::kDefaultSeed);

}  // namespace snlab
