#include "snlab/truncation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace snlab {

std::optional<TruncationScheme::Sidedness> sidedness_from_string(
    const std::string& s) {
  if (s == "two_sided") return TruncationScheme::Sidedness::two_sided;
  if (s == "left_only") return TruncationScheme::Sidedness::left_only;
  if (s == "right_only") return TruncationScheme::Sidedness::right_only;
  return std::nullopt;
}

FiniteOperator coordinate_projection(int n, int ambient,
                                     const NormedSpace& space) {
  if (n < 1) throw std::invalid_argument("coordinate_projection: n must be >= 1");
  if (n > ambient)
    throw std::invalid_argument("coordinate_projection: n exceeds ambient dim");
  Eigen::VectorXd d = Eigen::VectorXd::Zero(ambient);
  d.head(n).setOnes();
  NormedSpace sp(ambient, space.p);
  return FiniteOperator(Eigen::MatrixXd(d.asDiagonal()), sp, sp);
}

TruncationScheme coordinate_scheme(TruncationScheme::Sidedness sidedness,
                                   double scale) {
  TruncationScheme scheme;
  scheme.sidedness = sidedness;
  scheme.name = scale == 1.0 ? "coordinate"
                             : "coordinate_scaled_" + std::to_string(scale);
  scheme.make_P = [scale](int n, int ambient, const NormedSpace& sp) {
    return snlab::scale(scale, coordinate_projection(n, ambient, sp));
  };
  scheme.make_Q = [scale](int n, int ambient, const NormedSpace& sp) {
    return snlab::scale(scale, coordinate_projection(n, ambient, sp));
  };
  scheme.certified = [scale](int) { return scale <= 1.0; };
  return scheme;
}

namespace {

// T_n at ambient dimension `ambient`: the two-sided scheme compresses to the
// leading n x n section, the one-sided schemes act on the full section and
// zero out the untruncated side beyond n.
FiniteOperator build_truncation(const SequenceOperator& Tinf,
                                const TruncationScheme& scheme, int n,
                                int ambient) {
  const NormedSpace dom_sp(ambient, Tinf.dom_p);
  const NormedSpace cod_sp(ambient, Tinf.cod_q);
  switch (scheme.sidedness) {
    case TruncationScheme::Sidedness::two_sided: {
      FiniteOperator section = finite_section(Tinf, n);
      const NormedSpace dn(n, Tinf.dom_p), cn(n, Tinf.cod_q);
      return compose(scheme.make_Q(n, n, cn),
                     compose(section, scheme.make_P(n, n, dn)));
    }
    case TruncationScheme::Sidedness::left_only:
      return compose(scheme.make_Q(n, ambient, cod_sp),
                     finite_section(Tinf, ambient));
    case TruncationScheme::Sidedness::right_only:
      return compose(finite_section(Tinf, ambient),
                     scheme.make_P(n, ambient, dom_sp));
  }
  throw std::logic_error("build_truncation: bad sidedness");
}

void check_hypothesis(const SequenceOperator& Tinf,
                      const TruncationScheme& scheme,
                      const std::vector<int>& n_values, int ambient) {
  for (int n : n_values) {
    if (scheme.certified && scheme.certified(n)) continue;
    const FiniteOperator P =
        scheme.make_P(n, ambient, NormedSpace(ambient, Tinf.dom_p));
    const FiniteOperator Q =
        scheme.make_Q(n, ambient, NormedSpace(ambient, Tinf.cod_q));
    const double np = operator_norm(P).lower;
    const double nq = operator_norm(Q).lower;
    if (np > 1.0 + 1e-9 || nq > 1.0 + 1e-9) {
      throw SchemeHypothesisError(
          "scheme '" + scheme.name + "' violates ||P_n|| ||Q_n|| <= 1 at n = " +
          std::to_string(n));
    }
  }
}

// Aitken delta-squared estimate of the limit from the last three values.
std::optional<double> extrapolate(const std::vector<ConvergenceRow>& rows) {
  std::vector<double> tail;
  for (const auto& r : rows)
    if (r.solver_ok) tail.push_back(r.value);
  const std::size_t s = tail.size();
  if (s < 3) return s > 0 ? std::optional<double>(tail.back()) : std::nullopt;
  const double v1 = tail[s - 3], v2 = tail[s - 2], v3 = tail[s - 1];
  const double denom = (v3 - v2) - (v2 - v1);
  const double scale = std::max({std::abs(v1), std::abs(v2), std::abs(v3), 1.0});
  if (std::abs(denom) < 1e-14 * scale) return v3;
  return v3 - (v3 - v2) * (v3 - v2) / denom;
}

}  // namespace

double weakstar_residual(const SequenceOperator& Tinf,
                         const TruncationScheme& scheme, int n, int grid) {
  if (grid < 1) throw std::invalid_argument("weakstar_residual: grid must be >= 1");
  const int ambient = std::max(n, grid);
  FiniteOperator Tn = build_truncation(Tinf, scheme, n, ambient);
  double best = 0.0;
  for (int i = 1; i <= grid; ++i) {
    for (int j = 1; j <= grid; ++j) {
      const double sect =
          (i <= Tn.rows() && j <= Tn.cols()) ? Tn.matrix()(i - 1, j - 1) : 0.0;
      best = std::max(best, std::abs(sect - Tinf.entry(i, j)));
    }
  }
  return best;
}

ConvergenceReport convergence_experiment(
    const SequenceOperator& Tinf, const TruncationScheme& scheme,
    SNumberKind kind, int k, const std::vector<int>& n_values,
    std::optional<double> reference, std::uint64_t seed, double tolerance,
    const std::string& operator_id) {
  if (n_values.empty())
    throw std::invalid_argument("convergence_experiment: empty n_values");
  for (std::size_t i = 0; i < n_values.size(); ++i) {
    if (n_values[i] < 1 || (i > 0 && n_values[i] <= n_values[i - 1]))
      throw std::invalid_argument(
          "convergence_experiment: n_values must be positive and increasing");
  }
  const int ambient = n_values.back();
  check_hypothesis(Tinf, scheme, n_values, ambient);

  ConvergenceReport report;
  report.operator_id = operator_id;
  report.kind = kind;
  report.k = k;
  report.sidedness = scheme.sidedness;
  report.seed = seed;
  report.tolerance = tolerance;

  if (reference.has_value()) {
    report.reference = reference;
    report.reference_source = ReferenceSource::provided;
  } else if (Tinf.known_snumbers) {
    if (auto known = Tinf.known_snumbers(kind, k)) {
      report.reference = known;
      report.reference_source = ReferenceSource::known;
    }
  }

  for (int n : n_values) {
    ConvergenceRow row;
    row.n = n;
    try {
      FiniteOperator Tn = build_truncation(Tinf, scheme, n, ambient);
      SolverConfig cfg;
      cfg.seed = detail::splitmix64(seed ^ static_cast<std::uint64_t>(n));
      row.value = s_number(Tn, k, kind, cfg).value;
    } catch (const ConvergenceError&) {
      row.solver_ok = false;
      row.value = std::numeric_limits<double>::quiet_NaN();
    }
    report.rows.push_back(row);
  }

  if (!report.reference.has_value()) {
    if (auto ext = extrapolate(report.rows)) {
      report.reference = ext;
      report.reference_source = ReferenceSource::extrapolated;
    }
  }
  if (report.reference.has_value()) {
    for (auto& row : report.rows) {
      if (!row.solver_ok) continue;
      row.reference = report.reference;
      row.residual = std::abs(row.value - *report.reference);
    }
  }

  const bool ref_trusted = report.reference_source == ReferenceSource::known ||
                           report.reference_source == ReferenceSource::provided;
  report.upper_bounded = ref_trusted;
  for (const auto& row : report.rows) {
    if (!ref_trusted) break;
    if (!row.solver_ok || row.value > *report.reference + 1e-6)
      report.upper_bounded = false;
  }

  const double slack =
      1e-9 * std::max(1.0, report.reference ? std::abs(*report.reference) : 1.0);
  if (report.reference.has_value()) {
    report.monotone_observed = true;
    for (std::size_t i = 1; i < report.rows.size(); ++i) {
      if (!report.rows[i].residual || !report.rows[i - 1].residual) continue;
      if (*report.rows[i].residual > *report.rows[i - 1].residual + slack)
        report.monotone_observed = false;
    }
  } else {
    bool up = true, down = true;
    for (std::size_t i = 1; i < report.rows.size(); ++i) {
      if (report.rows[i].value > report.rows[i - 1].value + slack) down = false;
      if (report.rows[i].value < report.rows[i - 1].value - slack) up = false;
    }
    report.monotone_observed = up || down;
  }

  const ConvergenceRow& last = report.rows.back();
  report.converged = last.solver_ok && last.residual.has_value() &&
                     *last.residual < tolerance;
  return report;
}

}  // namespace snlab
