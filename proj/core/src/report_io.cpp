#include "snlab/report_io.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

namespace snlab {

std::string format_sig12(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v,
                           std::chars_format::general, 12);
  return std::string(buf, res.ptr);
}

Exponent exponent_from_json(const nlohmann::json& j) {
  if (j.is_number()) return Exponent(j.get<double>());
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf" || s == "Inf" || s == "infinity") return Exponent::inf();
    try {
      return Exponent(std::stod(s));
    } catch (const std::exception&) {
      throw std::invalid_argument("exponent string not parseable: " + s);
    }
  }
  throw std::invalid_argument("exponent must be a number or string");
}

FiniteOperator operator_from_json(const nlohmann::json& j) {
  if (!j.contains("matrix") || !j["matrix"].is_array() || j["matrix"].empty())
    throw std::invalid_argument("operator JSON needs a non-empty \"matrix\"");
  const auto& rows = j["matrix"];
  const int m = static_cast<int>(rows.size());
  if (!rows[0].is_array() || rows[0].empty())
    throw std::invalid_argument("operator JSON matrix rows must be non-empty arrays");
  const int n = static_cast<int>(rows[0].size());
  Eigen::MatrixXd M(m, n);
  for (int i = 0; i < m; ++i) {
    if (!rows[i].is_array() || static_cast<int>(rows[i].size()) != n)
      throw std::invalid_argument("operator JSON matrix rows have ragged lengths");
    for (int jj = 0; jj < n; ++jj) M(i, jj) = rows[i][jj].get<double>();
  }
  const Exponent p = j.contains("dom_p") ? exponent_from_json(j["dom_p"])
                                         : Exponent::two();
  const Exponent q = j.contains("cod_q") ? exponent_from_json(j["cod_q"])
                                         : Exponent::two();
  return FiniteOperator(std::move(M), NormedSpace(n, p), NormedSpace(m, q));
}

nlohmann::ordered_json operator_to_json(const FiniteOperator& T) {
  nlohmann::ordered_json j;
  auto rows = nlohmann::ordered_json::array();
  for (int i = 0; i < T.rows(); ++i) {
    auto row = nlohmann::ordered_json::array();
    for (int jj = 0; jj < T.cols(); ++jj) row.push_back(T.matrix()(i, jj));
    rows.push_back(row);
  }
  j["matrix"] = rows;
  j["dom_p"] = to_string(T.dom().p);
  j["cod_q"] = to_string(T.cod().p);
  return j;
}

namespace {

std::string report_flags(const ConvergenceReport& r) {
  std::string flags;
  switch (r.reference_source) {
    case ReferenceSource::known: flags += 'K'; break;
    case ReferenceSource::provided: flags += 'P'; break;
    case ReferenceSource::extrapolated: flags += 'E'; break;
    case ReferenceSource::none: flags += 'N'; break;
  }
  flags += r.upper_bounded ? 'U' : '-';
  flags += r.monotone_observed ? 'M' : '-';
  flags += r.converged ? 'C' : '-';
  return flags;
}

}  // namespace

std::string report_to_csv(const ConvergenceReport& report) {
  std::string out = "n,value,reference,residual,flags\n";
  const std::string flags = report_flags(report);
  for (const auto& row : report.rows) {
    out += std::to_string(row.n);
    out += ',';
    out += row.solver_ok ? format_sig12(row.value) : "nan";
    out += ',';
    if (row.reference) out += format_sig12(*row.reference);
    out += ',';
    if (row.residual) out += format_sig12(*row.residual);
    out += ',';
    out += flags;
    out += '\n';
  }
  return out;
}

nlohmann::ordered_json report_to_json(const ConvergenceReport& report) {
  nlohmann::ordered_json j;
  j["operator_id"] = report.operator_id;
  j["kind"] = to_string(report.kind);
  j["k"] = report.k;
  j["scheme"] = to_string(report.sidedness);
  j["seed"] = report.seed;
  j["tolerance"] = report.tolerance;
  j["reference_source"] = to_string(report.reference_source);
  if (report.reference)
    j["reference"] = *report.reference;
  else
    j["reference"] = nullptr;
  j["flags"] = {{"upper_bounded", report.upper_bounded},
                {"monotone_observed", report.monotone_observed},
                {"converged", report.converged}};
  auto rows = nlohmann::ordered_json::array();
  for (const auto& row : report.rows) {
    nlohmann::ordered_json r;
    r["n"] = row.n;
    if (row.solver_ok)
      r["value"] = row.value;
    else
      r["value"] = nullptr;
    if (row.reference)
      r["reference"] = *row.reference;
    else
      r["reference"] = nullptr;
    if (row.residual)
      r["residual"] = *row.residual;
    else
      r["residual"] = nullptr;
    r["solver_ok"] = row.solver_ok;
    rows.push_back(r);
  }
  j["rows"] = rows;
  return j;
}

CsvRow parse_csv_row(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else if (c != '\r' && c != '\n') {
      cur += c;
    }
  }
  fields.push_back(cur);
  if (fields.size() != 5)
    throw std::invalid_argument("CSV row must have 5 fields: " + line);
  CsvRow row;
  row.n = std::stoi(fields[0]);
  row.value = std::stod(fields[1]);
  if (!fields[2].empty()) row.reference = std::stod(fields[2]);
  if (!fields[3].empty()) row.residual = std::stod(fields[3]);
  row.flags = fields[4];
  return row;
}

}  // namespace snlab
