#include <doctest.h>

#include "snlab/gallery.hpp"
#include "snlab/report_io.hpp"
#include "snlab/truncation.hpp"

using namespace snlab;
using Eigen::MatrixXd;
using Eigen::VectorXd;

using Sided = TruncationScheme::Sidedness;

TEST_CASE("coordinate projections") {
  NormedSpace l1_3(3, Exponent::one());
  FiniteOperator P = coordinate_projection(2, 3, l1_3);
  MatrixXd expected = MatrixXd::Zero(3, 3);
  expected(0, 0) = expected(1, 1) = 1.0;
  CHECK(P.matrix().isApprox(expected));

  CHECK(coordinate_projection(3, 3, l1_3).matrix().isApprox(MatrixXd::Identity(3, 3)));
  CHECK_THROWS_AS(coordinate_projection(4, 3, l1_3), std::invalid_argument);

  // Exactly norm one on every palette exponent.
  for (const Exponent& p : {Exponent::one(), Exponent::two(), Exponent::inf()}) {
    NormEstimate est = operator_norm(coordinate_projection(2, 4, NormedSpace(4, p)));
    CHECK(est.lower == doctest::Approx(1.0));
    CHECK(est.is_exact());
  }

  // Composing with a diagonal keeps the leading block.
  VectorXd d(3);
  d << 5, 3, 2;
  FiniteOperator D = FiniteOperator::diagonal(d, Exponent::one(), Exponent::one());
  FiniteOperator PD = compose(coordinate_projection(2, 3, l1_3), D);
  CHECK(PD.matrix()(0, 0) == 5.0);
  CHECK(PD.matrix()(1, 1) == 3.0);
  CHECK(PD.matrix()(2, 2) == 0.0);
}

TEST_CASE("weakstar residual proxy") {
  const auto* ident = gallery_find("identity_l1");
  REQUIRE(ident != nullptr);
  auto scheme = coordinate_scheme(Sided::two_sided);
  CHECK(weakstar_residual(ident->op, scheme, 4, 3) == 0.0);
  CHECK(weakstar_residual(ident->op, scheme, 3, 3) == 0.0);

  const auto* harm = gallery_find("diag_harmonic");
  CHECK(weakstar_residual(harm->op, scheme, 5, 4) == 0.0);

  // Hilbert rule at n = grid/2: the largest discarded entry is at (1, n+1).
  const auto* hil = gallery_find("hilbert_matrix");
  const int grid = 4, n = 2;
  CHECK(weakstar_residual(hil->op, scheme, n, grid) ==
        doctest::Approx(1.0 / (1.0 + (n + 1.0) - 1.0)));

  CHECK_THROWS_AS(weakstar_residual(hil->op, scheme, 2, 0), std::invalid_argument);
}

TEST_CASE("convergence experiment on diag_harmonic") {
  const auto* harm = gallery_find("diag_harmonic");
  auto rep = convergence_experiment(harm->op, coordinate_scheme(Sided::two_sided),
                                    SNumberKind::approximation, 3,
                                    {1, 2, 3, 4, 5, 6, 7, 8});
  CHECK(rep.reference_source == ReferenceSource::known);
  CHECK(*rep.reference == doctest::Approx(1.0 / 3.0));
  CHECK(rep.upper_bounded);
  CHECK(rep.converged);
  for (const auto& row : rep.rows) {
    CHECK(row.value <= 1.0 / 3.0 + 1e-6);
    if (row.n >= 3) CHECK(row.value == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  }
}

TEST_CASE("convergence experiment on the l1 identity") {
  const auto* ident = gallery_find("identity_l1");
  auto rep = convergence_experiment(ident->op, coordinate_scheme(Sided::two_sided),
                                    SNumberKind::kolmogorov, 2, {2, 3, 4, 5, 6});
  for (const auto& row : rep.rows)
    CHECK(row.value == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(rep.converged);
  CHECK(rep.upper_bounded);

  // One-sided variant: rows beyond n are zeroed but the widths persist.
  auto left = convergence_experiment(ident->op, coordinate_scheme(Sided::left_only),
                                     SNumberKind::kolmogorov, 2, {2, 3, 4});
  for (const auto& row : left.rows)
    CHECK(row.value == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("diagonal sections reproduce the reference exactly for n >= k") {
  const auto* geo = gallery_find("diag_geometric_linf");
  auto rep = convergence_experiment(geo->op, coordinate_scheme(Sided::two_sided),
                                    SNumberKind::approximation, 2, {1, 2, 3, 4, 5});
  CHECK(rep.reference_source == ReferenceSource::known);
  for (const auto& row : rep.rows)
    if (row.n >= 2) CHECK(row.value == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("hypothesis guard refuses inflated schemes") {
  const auto* ident = gallery_find("identity_l1");
  CHECK_THROWS_AS(
      convergence_experiment(ident->op, coordinate_scheme(Sided::two_sided, 2.0),
                             SNumberKind::kolmogorov, 2, {2, 3}),
      SchemeHypothesisError);
  // A certified scheme with scale < 1 is fine.
  auto rep = convergence_experiment(ident->op,
                                    coordinate_scheme(Sided::two_sided, 0.5),
                                    SNumberKind::kolmogorov, 2, {2, 3});
  CHECK(rep.rows.size() == 2);
}

TEST_CASE("reports are deterministic for a fixed seed") {
  const auto* harm = gallery_find("diag_harmonic");
  auto a = convergence_experiment(harm->op, coordinate_scheme(Sided::two_sided),
                                  SNumberKind::kolmogorov, 2, {1, 2, 3, 4}, {},
                                  999);
  auto b = convergence_experiment(harm->op, coordinate_scheme(Sided::two_sided),
                                  SNumberKind::kolmogorov, 2, {1, 2, 3, 4}, {},
                                  999);
  REQUIRE(a.rows.size() == b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i)
    CHECK(a.rows[i].value == b.rows[i].value);
  CHECK(report_to_csv(a) == report_to_csv(b));
}

TEST_CASE("unknown references are extrapolated and flagged") {
  const auto* hil = gallery_find("hilbert_matrix");
  auto rep = convergence_experiment(hil->op, coordinate_scheme(Sided::two_sided),
                                    SNumberKind::approximation, 1, {1, 2, 3, 4, 5});
  CHECK(rep.reference_source == ReferenceSource::extrapolated);
  CHECK_FALSE(rep.upper_bounded);  // extrapolated references are not trusted
  CHECK(rep.reference.has_value());
}

TEST_CASE("solver failures are recorded per row, not fatal") {
  SequenceOperator weird;
  weird.entry = [](int i, int j) { return i == j ? 1.0 : 0.0; };
  weird.dom_p = Exponent::one();
  weird.cod_q = Exponent::one();
  auto rep = convergence_experiment(weird, coordinate_scheme(Sided::two_sided),
                                    SNumberKind::approximation, 1, {1, 2});
  for (const auto& row : rep.rows) CHECK(row.solver_ok);
}

TEST_CASE("input validation") {
  const auto* ident = gallery_find("identity_l1");
  auto scheme = coordinate_scheme(Sided::two_sided);
  CHECK_THROWS_AS(convergence_experiment(ident->op, scheme,
                                         SNumberKind::kolmogorov, 2, {}),
                  std::invalid_argument);
  CHECK_THROWS_AS(convergence_experiment(ident->op, scheme,
                                         SNumberKind::kolmogorov, 2, {3, 2}),
                  std::invalid_argument);
}
