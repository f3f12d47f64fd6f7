#include "snlab/operators.hpp"

namespace snlab {

FiniteOperator adjoint(const FiniteOperator& T) {
  FiniteOperator result(T.matrix().transpose(),
                        NormedSpace(T.cod().dim, T.cod().p.dual()),
                        NormedSpace(T.dom().dim, T.dom().p.dual()));
  result.set_adjoint_tag();
  return result;
}

FiniteOperator compose(const FiniteOperator& A, const FiniteOperator& B) {
  if (B.cod() != A.dom())
    throw std::invalid_argument(
        "compose: codomain of B must equal domain of A (dim and exponent)");
  return FiniteOperator(A.matrix() * B.matrix(), B.dom(), A.cod());
}

FiniteOperator add(const FiniteOperator& A, const FiniteOperator& B) {
  if (A.dom() != B.dom() || A.cod() != B.cod())
    throw std::invalid_argument("add: operators must share dom and cod");
  return FiniteOperator(A.matrix() + B.matrix(), A.dom(), A.cod());
}

FiniteOperator scale(double c, const FiniteOperator& T) {
  return FiniteOperator(c * T.matrix(), T.dom(), T.cod());
}

FiniteOperator finite_section(const SequenceOperator& Tinf, int n) {
  if (n < 1) throw std::invalid_argument("finite_section: n must be >= 1");
  Eigen::MatrixXd M(n, n);
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) M(i - 1, j - 1) = Tinf.entry(i, j);
  return FiniteOperator(std::move(M), NormedSpace(n, Tinf.dom_p),
                        NormedSpace(n, Tinf.cod_q));
}

}  // namespace snlab
