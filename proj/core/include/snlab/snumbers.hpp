#pragma once

#include <vector>

#include "snlab/kinds.hpp"
#include "snlab/opnorm.hpp"
#include "snlab/operators.hpp"

namespace snlab {

// Which side of the true s-number the reported value certifies.
enum class BoundSide { lower, upper, two_sided };

inline const char* to_string(BoundSide side) {
  switch (side) {
    case BoundSide::lower: return "lower";
    case BoundSide::upper: return "upper";
    case BoundSide::two_sided: return "two_sided";
  }
  return "?";
}

// Result of one s-number solve. `witness` is the solver-specific
// certificate:
//   approximation -> the rank-(<k) approximant F (m x n),
//   kolmogorov    -> a basis B of the codomain subspace (m x (k-1)),
//   gelfand       -> the constraint matrix A ((k-1) x n),
//   weyl          -> the domain contraction R (n x n),
//   chang         -> the codomain contraction S (m x m).
// Recomputing the objective at the witness reproduces `value` up to 1e-8
// (from above for inf-type solvers, from below for sup-type ones).
struct SNumberResult {
  double value = 0.0;
  int k = 1;
  SNumberKind kind = SNumberKind::approximation;
  BoundSide bound_side = BoundSide::upper;
  Eigen::MatrixXd witness;
  bool converged = true;
};

struct SolverConfig {
  std::uint64_t seed = detail::kDefaultSeed;
  int restarts = 16;
  int outer_iterations = 200;
  double rel_tol = 1e-10;

  SolverConfig with_seed(std::uint64_t s) const {
    SolverConfig c = *this;
    c.seed = s;
    return c;
  }
};

// a_k(T) = inf{||T - F|| : rank(F) < k}. Alternating descent over factor
// pairs F = U V with multi-restart; exact (Eckart-Young) for (2,2).
// k = 1 forces F = 0, so a_1 = ||T||; k > min(m,n) admits F = T, so 0.
SNumberResult approximation_number(const FiniteOperator& T, int k,
                                   const SolverConfig& cfg = {});

// d_k(T) = inf over subspaces N of the codomain with dim(N) < k of the
// quotient norm ||Q_N T||. Multi-restart descent over basis matrices.
SNumberResult kolmogorov_number(const FiniteOperator& T, int k,
                                const SolverConfig& cfg = {});

// c_k(T) = inf over subspaces M of the domain with codim(M) < k of
// ||T restricted to M||. Multi-restart descent over constraint matrices.
SNumberResult gelfand_number(const FiniteOperator& T, int k,
                             const SolverConfig& cfg = {});

// x_k(T) = sup{a_k(TR) : ||R : l2 -> X|| <= 1}, the auxiliary Hilbert space
// instantiated at the domain dimension. Lower-bound certificate.
SNumberResult weyl_number(const FiniteOperator& T, int k,
                          const SolverConfig& cfg = {});

// y_k(T) = sup{a_k(ST) : ||S : Y -> l2|| <= 1}; mirror of weyl_number.
SNumberResult chang_number(const FiniteOperator& T, int k,
                           const SolverConfig& cfg = {});

// d_k via the quotient identity d_k(T) = a_k(T Q): the columns of E are the
// extreme points of the domain unit ball (p in {1, inf} only), and T E is
// read as an operator out of l^1 over those points. With extreme_points
// false, a deterministic sample of the extreme points is used instead
// (approximate; intended for p = inf at dimensions where 2^n is too large).
double kolmogorov_via_ak(const FiniteOperator& T, int k,
                         bool extreme_points = true,
                         const SolverConfig& cfg = {});

// c_k via the embedding identity c_k(T) = a_k(J T): the rows of F are the
// extreme points of the dual unit ball of the codomain (exact for
// q in {1, inf}); for other q a net of `functional_net` random unit
// functionals gives a lower approximation.
double gelfand_via_ak(const FiniteOperator& T, int k, int functional_net = 0,
                      const SolverConfig& cfg = {});

// Uniform dispatch over the five kinds.
SNumberResult s_number(const FiniteOperator& T, int k, SNumberKind kind,
                       const SolverConfig& cfg = {});

// Computes s_k for every k in ks (must be increasing), warm-starting each
// solve from the previous witness and enforcing the nonincreasing-in-k
// property of s-number scales on the reported values.
std::vector<SNumberResult> s_number_sweep(const FiniteOperator& T,
                                          SNumberKind kind,
                                          const std::vector<int>& ks,
                                          const SolverConfig& cfg = {});

}  // namespace snlab
