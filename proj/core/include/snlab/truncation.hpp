#pragma once

#include <optional>
#include <string>
#include <vector>

#include "snlab/operators.hpp"
#include "snlab/snumbers.hpp"

namespace snlab {

// Raised when an experiment is asked to run on a scheme whose projections
// cannot be certified (or verified) to satisfy ||P_n|| ||Q_n|| <= 1.
class SchemeHypothesisError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Rule n -> (P_n, Q_n) used to build truncations Q_n T P_n (or the
// one-sided variants Q_n T and T P_n). `certified` reports whether
// ||P_n|| ||Q_n|| <= 1 holds exactly by construction, as it does for
// coordinate projections; uncertified schemes are admitted only after a
// numerical norm check.
struct TruncationScheme {
  enum class Sidedness { two_sided, left_only, right_only };

  Sidedness sidedness = Sidedness::two_sided;
  std::string name;
  std::function<FiniteOperator(int n, int ambient, const NormedSpace&)> make_P;
  std::function<FiniteOperator(int n, int ambient, const NormedSpace&)> make_Q;
  std::function<bool(int)> certified;
};

inline const char* to_string(TruncationScheme::Sidedness s) {
  switch (s) {
    case TruncationScheme::Sidedness::two_sided: return "two_sided";
    case TruncationScheme::Sidedness::left_only: return "left_only";
    case TruncationScheme::Sidedness::right_only: return "right_only";
  }
  return "?";
}

std::optional<TruncationScheme::Sidedness> sidedness_from_string(
    const std::string& s);

// Diagonal 0/1 matrix keeping the first n of `ambient` coordinates; its
// operator norm is exactly 1 on every l^p.
FiniteOperator coordinate_projection(int n, int ambient,
                                     const NormedSpace& space);

// The standard scheme built from coordinate projections scaled by `scale`.
// Only scale <= 1 is certified; scale > 1 exists to exercise the
// hypothesis guard.
TruncationScheme coordinate_scheme(TruncationScheme::Sidedness sidedness,
                                   double scale = 1.0);

// max over the grid x grid leading block of |entry(Q_n T P_n) - entry(T)|,
// the computable proxy for weak* convergence of the truncations.
double weakstar_residual(const SequenceOperator& Tinf,
                         const TruncationScheme& scheme, int n, int grid);

enum class ReferenceSource { known, provided, extrapolated, none };

inline const char* to_string(ReferenceSource s) {
  switch (s) {
    case ReferenceSource::known: return "known";
    case ReferenceSource::provided: return "provided";
    case ReferenceSource::extrapolated: return "extrapolated";
    case ReferenceSource::none: return "none";
  }
  return "?";
}

struct ConvergenceRow {
  int n = 0;
  double value = 0.0;
  std::optional<double> reference;
  std::optional<double> residual;
  bool solver_ok = true;
};

// Per-(k, n) record of s_k(T_n) against the reference s_k(T).
struct ConvergenceReport {
  std::string operator_id;
  SNumberKind kind = SNumberKind::approximation;
  int k = 1;
  TruncationScheme::Sidedness sidedness = TruncationScheme::Sidedness::two_sided;
  std::uint64_t seed = detail::kDefaultSeed;
  double tolerance = 1e-6;
  ReferenceSource reference_source = ReferenceSource::none;
  std::optional<double> reference;
  std::vector<ConvergenceRow> rows;
  bool upper_bounded = false;
  bool monotone_observed = false;
  bool converged = false;
};

// Builds the truncations over n_values (increasing), computes s_k of each,
// and assembles the report. The reference priority is: the explicit
// `reference` argument, then Tinf.known_snumbers, then Aitken extrapolation
// of the last three rows (flagged as such). Refuses schemes that fail the
// norm-certificate guard by raising SchemeHypothesisError. Per-row solver
// failures are recorded, not fatal.
ConvergenceReport convergence_experiment(
    const SequenceOperator& Tinf, const TruncationScheme& scheme,
    SNumberKind kind, int k, const std::vector<int>& n_values,
    std::optional<double> reference = std::nullopt,
    std::uint64_t seed = detail::kDefaultSeed, double tolerance = 1e-6,
    const std::string& operator_id = "inline");

}  // namespace snlab
