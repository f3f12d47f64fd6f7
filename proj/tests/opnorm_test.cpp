#include <doctest.h>

#include "snlab/opnorm.hpp"
#include "test_util.hpp"

using namespace snlab;
using Eigen::MatrixXd;
using Eigen::VectorXd;

TEST_CASE("operator_norm closed forms") {
  FiniteOperator I = FiniteOperator::identity(2, Exponent::one());
  NormEstimate e1 = operator_norm(I);
  CHECK(e1.lower == doctest::Approx(1.0));
  CHECK(e1.is_exact());

  VectorXd d(2);
  d << 3, 1;
  FiniteOperator D = FiniteOperator::diagonal(d, Exponent::two(), Exponent::two());
  CHECK(operator_norm(D).lower == doctest::Approx(3.0));

  MatrixXd M(2, 2);
  M << 1, 1, 0, 0;
  FiniteOperator T(M, NormedSpace(2, Exponent::inf()), NormedSpace(2, Exponent::one()));
  NormEstimate e3 = operator_norm(T);
  CHECK(e3.lower == doctest::Approx(2.0));
  // Sign-pattern oracle agrees (extreme points of the inf-ball).
  CHECK(oracle_operator_norm(T, 10) == doctest::Approx(2.0));

  FiniteOperator Z = FiniteOperator::zero(2, 3, Exponent(4.0), Exponent(4.0 / 3.0));
  CHECK(operator_norm(Z).lower == 0.0);
}

TEST_CASE("norm estimate witnesses are feasible and achieving") {
  auto rng = detail::make_rng(31, {0});
  for (const Exponent& p : testutil::palette()) {
    for (const Exponent& q : testutil::palette()) {
      FiniteOperator T = testutil::random_operator(rng, 3, 4, p, q);
      NormEstimate est = operator_norm(T);
      CHECK(vector_norm(est.witness, p) <= 1.0 + 1e-9);
      CHECK(vector_norm(T.apply(est.witness), q) >= est.lower - 1e-9);
      if (est.upper) CHECK(est.lower <= *est.upper + 1e-12);
    }
  }
}

TEST_CASE("operator_norm homogeneity") {
  auto rng = detail::make_rng(32, {0});
  for (const auto& [p, q] : testutil::exact_pairs()) {
    FiniteOperator T = testutil::random_operator(rng, 3, 3, p, q);
    const double base = operator_norm(T).lower;
    const double scaled = operator_norm(scale(-2.5, T)).lower;
    CHECK(scaled == doctest::Approx(2.5 * base).epsilon(1e-9));
  }
  // Optimized path with identical seeds.
  FiniteOperator T = testutil::random_operator(rng, 3, 3, Exponent(4.0),
                                               Exponent(4.0 / 3.0));
  const double base = operator_norm(T, 99).lower;
  const double scaled = operator_norm(scale(3.0, T), 99).lower;
  CHECK(scaled == doctest::Approx(3.0 * base).epsilon(1e-9));
}

TEST_CASE("norm duality on exact-branch pairs") {
  auto rng = detail::make_rng(33, {0});
  // (1,q) <-> (q', inf) and (2,2).
  for (const Exponent& q : testutil::palette()) {
    FiniteOperator T = testutil::random_operator(rng, 3, 3, Exponent::one(), q);
    CHECK(operator_norm(adjoint(T)).lower ==
          doctest::Approx(operator_norm(T).lower).epsilon(1e-6));
  }
  FiniteOperator H = testutil::random_operator(rng, 4, 4, Exponent::two(),
                                               Exponent::two());
  CHECK(operator_norm(adjoint(H)).lower ==
        doctest::Approx(operator_norm(H).lower).epsilon(1e-6));
}

TEST_CASE("every estimate sits above the coordinate-image floor") {
  auto rng = detail::make_rng(34, {0});
  for (const Exponent& p : testutil::palette()) {
    for (const Exponent& q : testutil::palette()) {
      FiniteOperator T = testutil::random_operator(rng, 4, 3, p, q);
      double floor_val = 0.0;
      for (int j = 0; j < T.cols(); ++j)
        floor_val = std::max(floor_val, vector_norm(T.matrix().col(j), q));
      CHECK(operator_norm(T).lower >= floor_val - 1e-9);
    }
  }
}

TEST_CASE("oracle_operator_norm") {
  auto rng = detail::make_rng(35, {0});
  // p = 1: exact column maximum.
  FiniteOperator T1 = testutil::random_operator(rng, 3, 3, Exponent::one(),
                                                Exponent::two());
  double cols = 0.0;
  for (int j = 0; j < 3; ++j)
    cols = std::max(cols, T1.matrix().col(j).norm());
  CHECK(oracle_operator_norm(T1, 5) == doctest::Approx(cols));

  // (2,2): within 1e-4 of the top singular value.
  FiniteOperator T2 = testutil::random_operator(rng, 3, 3, Exponent::two(),
                                                Exponent::two());
  Eigen::JacobiSVD<MatrixXd> svd(T2.matrix());
  CHECK(oracle_operator_norm(T2, 8000) ==
        doctest::Approx(svd.singularValues()(0)).epsilon(1e-4));

  FiniteOperator Z = FiniteOperator::zero(2, 2, Exponent::two(), Exponent::two());
  CHECK(oracle_operator_norm(Z, 10) == 0.0);
  CHECK_THROWS_AS(oracle_operator_norm(Z, 0), std::invalid_argument);

  // Always a valid lower bound for the exact estimate on exact branches.
  for (const auto& [p, q] : testutil::exact_pairs()) {
    FiniteOperator T = testutil::random_operator(rng, 3, 3, p, q);
    CHECK(oracle_operator_norm(T, 3000) <= operator_norm(T).lower + 1e-9);
  }
}
