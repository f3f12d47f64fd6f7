#pragma once

#include <nlohmann/json.hpp>
#include <string>

#include "snlab/operators.hpp"
#include "snlab/truncation.hpp"

namespace snlab {

// Locale-independent formatting with 12 significant digits, the report
// interchange precision.
std::string format_sig12(double v);

// Operator literal: {"matrix": [[...]], "dom_p": "1"|"2"|"inf"|number,
// "cod_q": ...}. Values are read as 64-bit floats.
Exponent exponent_from_json(const nlohmann::json& j);
FiniteOperator operator_from_json(const nlohmann::json& j);
nlohmann::ordered_json operator_to_json(const FiniteOperator& T);

// CSV layout: one header line `n,value,reference,residual,flags`, then one
// row per n. reference/residual are empty when unknown. The flags column is
// four characters: reference source (K known, P provided, E extrapolated,
// N none) followed by U/M/C markers ('-' when unset) for upper_bounded,
// monotone_observed and converged.
std::string report_to_csv(const ConvergenceReport& report);
nlohmann::ordered_json report_to_json(const ConvergenceReport& report);

struct CsvRow {
  int n = 0;
  double value = 0.0;
  std::optional<double> reference;
  std::optional<double> residual;
  std::string flags;
};

// Parses one data line of the CSV back into a row (round-trip check).
CsvRow parse_csv_row(const std::string& line);

}  // namespace snlab
