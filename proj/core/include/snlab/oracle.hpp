#pragma once

#include "snlab/detail/random.hpp"
#include "snlab/operators.hpp"

namespace snlab {

// Budget for the brute-force reference computations. They exist to validate
// derived test values and to cross-check the structured solvers, so they
// deliberately share no search machinery with them.
struct OracleBudget {
  int samples = 2000;
  int polish_steps = 200;
  std::uint64_t seed = detail::kDefaultSeed;
};

// Upper bound on a_k(T) from randomized rank-(k-1) candidates (Gaussian
// factor pairs scaled through a coarse magnitude grid), each polished by
// coordinate descent. Intended for dims <= 4 and k <= 3; guarded at
// dims <= 6, k <= 4.
double oracle_approximation_number(const FiniteOperator& T, int k,
                                   const OracleBudget& budget = {});

// Upper bound on d_k(T) from randomized codomain subspaces with coordinate
// polish. Requires an exactly evaluable inner sup: domain exponent in
// {1, inf}, or (2,2).
double oracle_kolmogorov_number(const FiniteOperator& T, int k,
                                const OracleBudget& budget = {});

// Upper bound on c_k(T) from randomized domain constraint matrices with
// coordinate polish. Requires domain exponent in {1, inf}, or p = 2 with
// codomain exponent in {2, inf}.
double oracle_gelfand_number(const FiniteOperator& T, int k,
                             const OracleBudget& budget = {});

}  // namespace snlab
