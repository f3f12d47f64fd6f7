#pragma once

#include <Eigen/Dense>
#include <functional>
#include <optional>

#include "snlab/kinds.hpp"
#include "snlab/spaces.hpp"

namespace snlab {

// Marker recording that an operator was produced by adjoint().
struct AdjointTag {};

// A dense real matrix tagged with its domain and codomain l^p spaces.
// This is the object every s-number solver consumes.
class FiniteOperator {
 public:
  FiniteOperator(Eigen::MatrixXd matrix, NormedSpace dom, NormedSpace cod)
      : matrix_(std::move(matrix)), dom_(dom), cod_(cod) {
    if (matrix_.cols() != dom_.dim || matrix_.rows() != cod_.dim)
      throw std::invalid_argument(
          "FiniteOperator: matrix shape does not match space dimensions");
    if (!matrix_.allFinite())
      throw std::invalid_argument("FiniteOperator: entries must be finite");
  }

  static FiniteOperator identity(int n, Exponent p) {
    return FiniteOperator(Eigen::MatrixXd::Identity(n, n), NormedSpace(n, p),
                          NormedSpace(n, p));
  }
  static FiniteOperator zero(int m, int n, Exponent p, Exponent q) {
    return FiniteOperator(Eigen::MatrixXd::Zero(m, n), NormedSpace(n, p),
                          NormedSpace(m, q));
  }
  static FiniteOperator diagonal(const Eigen::VectorXd& d, Exponent p,
                                 Exponent q) {
    const int n = static_cast<int>(d.size());
    return FiniteOperator(Eigen::MatrixXd(d.asDiagonal()), NormedSpace(n, p),
                          NormedSpace(n, q));
  }

  const Eigen::MatrixXd& matrix() const { return matrix_; }
  const NormedSpace& dom() const { return dom_; }
  const NormedSpace& cod() const { return cod_; }
  int rows() const { return static_cast<int>(matrix_.rows()); }
  int cols() const { return static_cast<int>(matrix_.cols()); }

  Eigen::VectorXd apply(const Eigen::VectorXd& x) const {
    if (x.size() != dom_.dim)
      throw std::invalid_argument("apply: vector length does not match domain");
    return matrix_ * x;
  }

  bool was_adjoint() const { return adjoint_tag_.has_value(); }
  void set_adjoint_tag() { adjoint_tag_ = AdjointTag{}; }

 private:
  Eigen::MatrixXd matrix_;
  NormedSpace dom_, cod_;
  std::optional<AdjointTag> adjoint_tag_;
};

// Transpose acting between the dual spaces: T' : l^{q'} -> l^{p'}.
FiniteOperator adjoint(const FiniteOperator& T);

// A * B; requires B.cod == A.dom (dimension and exponent).
FiniteOperator compose(const FiniteOperator& A, const FiniteOperator& B);

FiniteOperator add(const FiniteOperator& A, const FiniteOperator& B);
FiniteOperator scale(double c, const FiniteOperator& T);

// An infinite matrix given by an entry rule on N x N (1-based indices),
// the object being truncated. tail_bound(n), when present, is a certified
// upper bound on the norm of the part discarded by the n-th section and
// must be nonincreasing in n. known_snumbers, when present, returns the
// analytic value s_k(T) for the full operator.
struct SequenceOperator {
  std::function<double(int, int)> entry;
  Exponent dom_p = Exponent::two();
  Exponent cod_q = Exponent::two();
  std::function<double(int)> tail_bound;  // may be empty ("unknown")
  std::function<std::optional<double>(SNumberKind, int)> known_snumbers;
};

// Leading n x n principal section [entry(i,j)]_{i,j<=n} with the parent
// exponents on both sides.
FiniteOperator finite_section(const SequenceOperator& Tinf, int n);

}  // namespace snlab
