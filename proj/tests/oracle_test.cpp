#include <doctest.h>

#include "snlab/oracle.hpp"
#include "snlab/snumbers.hpp"
#include "test_util.hpp"

using namespace snlab;
using Eigen::MatrixXd;
using Eigen::VectorXd;

TEST_CASE("oracle approximation number") {
  VectorXd d(2);
  d << 3, 1;
  FiniteOperator D = FiniteOperator::diagonal(d, Exponent::two(), Exponent::two());
  CHECK(oracle_approximation_number(D, 2, {1500, 150, 1}) ==
        doctest::Approx(1.0).epsilon(1e-3));

  auto rng = detail::make_rng(61, {0});
  MatrixXd rank1 = detail::gaussian_matrix(rng, 2, 1) *
                   detail::gaussian_matrix(rng, 1, 2);
  FiniteOperator R1(rank1, NormedSpace(2, Exponent::two()),
                    NormedSpace(2, Exponent::two()));
  CHECK(oracle_approximation_number(R1, 2, {800, 200, 1}) <= 1e-6);

  FiniteOperator I2 = FiniteOperator::identity(2, Exponent::one());
  const double val = oracle_approximation_number(I2, 2, {800, 100, 1});
  CHECK(val >= 1.0 - 1e-3);  // d_2 = 1 forces a_2 >= 1
  CHECK(val <= approximation_number(I2, 2).value + 1e-6);

  CHECK_THROWS_AS(oracle_approximation_number(I2, 0, {}), std::invalid_argument);
  FiniteOperator big = FiniteOperator::identity(7, Exponent::one());
  CHECK_THROWS_AS(oracle_approximation_number(big, 2, {}), std::invalid_argument);
}

TEST_CASE("oracle matches singular values on (2,2)") {
  auto rng = detail::make_rng(62, {0});
  for (int t = 0; t < 3; ++t) {
    FiniteOperator T = testutil::random_operator(rng, 3, 3, Exponent::two(),
                                                 Exponent::two());
    Eigen::JacobiSVD<MatrixXd> svd(T.matrix());
    for (int k = 1; k <= 3; ++k) {
      const double sk = svd.singularValues()(k - 1);
      CHECK(oracle_approximation_number(T, k, {1500, 200, 5}) ==
            doctest::Approx(sk).epsilon(1e-3));
    }
  }
}

TEST_CASE("oracle subspace searches respect domination") {
  auto rng = detail::make_rng(63, {0});
  OracleBudget ob{1200, 150, 9};
  // Instances across the exactly evaluable combinations.
  std::vector<FiniteOperator> instances;
  instances.push_back(FiniteOperator::identity(3, Exponent::one()));
  VectorXd d(3);
  d << 2, 1, 0.5;
  instances.push_back(FiniteOperator::diagonal(d, Exponent::one(), Exponent::one()));
  instances.push_back(FiniteOperator::diagonal(d, Exponent::inf(), Exponent::inf()));
  instances.push_back(testutil::random_operator(rng, 3, 3, Exponent::two(),
                                                Exponent::two()));
  instances.push_back(testutil::random_operator(rng, 3, 3, Exponent::one(),
                                                Exponent::inf()));
  for (const FiniteOperator& T : instances) {
    for (int k = 2; k <= 3; ++k) {
      const double oa = oracle_approximation_number(T, k, ob);
      CHECK(oracle_kolmogorov_number(T, k, ob) <= oa + 1e-6);
      CHECK(oracle_gelfand_number(T, k, ob) <= oa + 1e-6);
    }
  }
}

TEST_CASE("oracle subspace searches reject inexact inner sups") {
  auto rng = detail::make_rng(64, {0});
  FiniteOperator T = testutil::random_operator(rng, 3, 3, Exponent(4.0),
                                               Exponent(4.0 / 3.0));
  CHECK_THROWS_AS(oracle_kolmogorov_number(T, 2, {}), std::domain_error);
  CHECK_THROWS_AS(oracle_gelfand_number(T, 2, {}), std::domain_error);
}

TEST_CASE("oracle results are reproducible for a fixed seed") {
  auto rng = detail::make_rng(65, {0});
  FiniteOperator T = testutil::random_operator(rng, 3, 3, Exponent::one(),
                                               Exponent::inf());
  OracleBudget ob{500, 60, 12345};
  CHECK(oracle_approximation_number(T, 2, ob) ==
        oracle_approximation_number(T, 2, ob));
  CHECK(oracle_kolmogorov_number(T, 2, ob) == oracle_kolmogorov_number(T, 2, ob));
  CHECK(oracle_gelfand_number(T, 2, ob) == oracle_gelfand_number(T, 2, ob));
}
