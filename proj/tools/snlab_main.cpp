// Command-line surface: compute s-numbers of a matrix, run truncation
// convergence experiments over the gallery, run the invariant suite, and
// emit machine-readable reports.
//
// Exit codes: 0 success, 2 malformed input/config, 3 solver failure,
// 4 scheme hypothesis (norm certificate) violation, 5 property-suite
// failure (the first counterexample is printed as JSON).

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>

#include "snlab/axioms.hpp"
#include "snlab/gallery.hpp"
#include "snlab/report_io.hpp"
#include "snlab/snumbers.hpp"
#include "snlab/truncation.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitBadInput = 2;
constexpr int kExitSolverFailure = 3;
constexpr int kExitSchemeRefused = 4;
constexpr int kExitPropertyFailure = 5;

nlohmann::json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  nlohmann::json j;
  in >> j;
  return j;
}

struct ComputeArgs {
  std::string matrix_file;
  std::string p_override, q_override;
  std::string kind = "approximation";
  int k = 1;
  std::uint64_t seed = snlab::detail::kDefaultSeed;
};

int run_compute(const ComputeArgs& args) {
  nlohmann::json j;
  snlab::FiniteOperator T = snlab::FiniteOperator::identity(1, snlab::Exponent::two());
  try {
    j = load_json_file(args.matrix_file);
    if (!args.p_override.empty()) j["dom_p"] = args.p_override;
    if (!args.q_override.empty()) j["cod_q"] = args.q_override;
    T = snlab::operator_from_json(j);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  }
  const auto kind = snlab::kind_from_string(args.kind);
  if (!kind || args.k < 1) {
    std::cerr << "error: bad kind or k\n";
    return kExitBadInput;
  }
  try {
    snlab::SolverConfig cfg;
    cfg.seed = args.seed;
    snlab::SNumberResult res = snlab::s_number(T, args.k, *kind, cfg);
    std::cout << "value=" << snlab::format_sig12(res.value)
              << " kind=" << snlab::to_string(res.kind) << " k=" << res.k
              << " bound=" << snlab::to_string(res.bound_side)
              << " witness=" << res.witness.rows() << "x" << res.witness.cols()
              << " witness_frobenius=" << snlab::format_sig12(res.witness.norm())
              << "\n";
    return kExitOk;
  } catch (const std::exception& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return kExitSolverFailure;
  }
}

struct ConvergeArgs {
  std::string config_file;
};

int run_converge(const ConvergeArgs& args) {
  nlohmann::json cfg;
  std::string operator_id = "inline";
  snlab::SequenceOperator op;
  snlab::SNumberKind kind = snlab::SNumberKind::approximation;
  std::vector<int> k_values, n_values;
  snlab::TruncationScheme scheme;
  std::uint64_t seed = snlab::detail::kDefaultSeed;
  std::string output = "report";
  std::string format = "csv";
  double tolerance = 1e-6;
  std::optional<double> reference;

  try {
    cfg = load_json_file(args.config_file);
    if (cfg.contains("operator_id")) {
      operator_id = cfg["operator_id"].get<std::string>();
      const snlab::GalleryEntry* entry = snlab::gallery_find(operator_id);
      if (!entry) throw std::invalid_argument("unknown gallery id: " + operator_id);
      op = entry->op;
    } else if (cfg.contains("operator")) {
      snlab::FiniteOperator T = snlab::operator_from_json(cfg["operator"]);
      const Eigen::MatrixXd M = T.matrix();
      op.entry = [M](int i, int j) {
        return (i <= M.rows() && j <= M.cols()) ? M(i - 1, j - 1) : 0.0;
      };
      op.dom_p = T.dom().p;
      op.cod_q = T.cod().p;
      const int size = std::max(T.rows(), T.cols());
      op.tail_bound = [size](int n) { return n >= size ? 0.0 : 1.0; };
    } else {
      throw std::invalid_argument("config needs operator_id or operator");
    }

    const auto parsed_kind = snlab::kind_from_string(
        cfg.value("kind", std::string("approximation")));
    if (!parsed_kind) throw std::invalid_argument("unknown kind");
    kind = *parsed_kind;

    k_values = cfg.at("k_values").get<std::vector<int>>();
    n_values = cfg.at("n_values").get<std::vector<int>>();
    if (k_values.empty() || n_values.empty())
      throw std::invalid_argument("k_values and n_values must be non-empty");
    for (std::size_t i = 0; i < k_values.size(); ++i)
      if (k_values[i] < 1 || (i > 0 && k_values[i] <= k_values[i - 1]))
        throw std::invalid_argument("k_values must be positive and increasing");

    const auto sided = snlab::sidedness_from_string(
        cfg.value("scheme", std::string("two_sided")));
    if (!sided) throw std::invalid_argument("unknown scheme");
    scheme = snlab::coordinate_scheme(*sided, cfg.value("scheme_scale", 1.0));

    seed = cfg.value("seed", snlab::detail::kDefaultSeed);
    output = cfg.value("output", std::string("report"));
    format = cfg.value("format", std::string("csv"));
    if (format != "csv" && format != "json")
      throw std::invalid_argument("format must be csv or json");
    tolerance = cfg.value("tolerance", 1e-6);
    if (cfg.contains("reference") && cfg["reference"].is_number())
      reference = cfg["reference"].get<double>();
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitBadInput;
  }

  for (int k : k_values) {
    snlab::ConvergenceReport report;
    try {
      report = snlab::convergence_experiment(op, scheme, kind, k, n_values,
                                             reference, seed, tolerance,
                                             operator_id);
    } catch (const snlab::SchemeHypothesisError& e) {
      std::cerr << "scheme refused: " << e.what() << "\n";
      return kExitSchemeRefused;
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return kExitBadInput;
    }

    std::string path = output;
    if (k_values.size() > 1) path += "_k" + std::to_string(k);
    path += "." + format;
    std::ofstream out(path, std::ios::binary);
    if (!out) {
      std::cerr << "error: cannot write " << path << "\n";
      return kExitBadInput;
    }
    if (format == "csv")
      out << snlab::report_to_csv(report);
    else
      out << snlab::report_to_json(report).dump(2) << "\n";

    const auto& last = report.rows.back();
    const std::string residual =
        last.residual ? snlab::format_sig12(*last.residual) : "unknown";
    std::cout << (report.converged ? "converged" : "not_converged")
              << " k=" << k << " residual=" << residual << "\n";
  }
  return kExitOk;
}

int run_axioms(std::uint64_t seed, int trials, bool inject_fault) {
  snlab::AxiomSuiteReport report;
  try {
    report = snlab::run_axiom_suite(
        seed, trials,
        inject_fault ? snlab::FaultInjection::break_approximation
                     : snlab::FaultInjection::none);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  }
  for (const auto& prop : report.properties) {
    std::cout << prop.name << ": " << (prop.total - prop.failures) << "/"
              << prop.total << " pass\n";
  }
  if (!report.all_passed) {
    for (const auto& prop : report.properties) {
      if (prop.failures > 0) {
        nlohmann::ordered_json j;
        j["property"] = prop.name;
        j["counterexample"] = prop.first_counterexample;
        std::cout << j.dump(2) << "\n";
        break;
      }
    }
    return kExitPropertyFailure;
  }
  std::cout << "all properties passed\n";
  return kExitOk;
}

int run_gallery() {
  for (const auto& e : snlab::gallery()) {
    std::cout << e.id << "  [" << snlab::to_string(e.op.dom_p) << " -> "
              << snlab::to_string(e.op.cod_q) << "]"
              << (e.op.known_snumbers ? "  (known s-numbers)" : "") << "\n    "
              << e.provenance << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"s-number laboratory: widths of operators between l^p spaces"};
  app.require_subcommand(1);

  ComputeArgs compute_args;
  CLI::App* compute = app.add_subcommand(
      "compute", "compute one s-number of an operator given as JSON");
  compute->add_option("--matrix", compute_args.matrix_file,
                      "operator JSON file")->required();
  compute->add_option("--p", compute_args.p_override, "override dom_p");
  compute->add_option("--q", compute_args.q_override, "override cod_q");
  compute->add_option("--kind", compute_args.kind,
                      "approximation|kolmogorov|gelfand|weyl|chang");
  compute->add_option("--k", compute_args.k, "index k (>= 1)");
  compute->add_option("--seed", compute_args.seed, "solver seed");

  ConvergeArgs converge_args;
  CLI::App* converge = app.add_subcommand(
      "converge", "run a truncation convergence experiment from a JSON config");
  converge->add_option("--config", converge_args.config_file,
                       "experiment config JSON")->required();

  std::uint64_t axioms_seed = 0;
  int axioms_trials = 25;
  bool inject_fault = false;
  CLI::App* axioms =
      app.add_subcommand("axioms", "run the s-number invariant suite");
  axioms->add_option("--seed", axioms_seed, "suite seed");
  axioms->add_option("--trials", axioms_trials, "number of random instances");
  axioms->add_flag("--inject-fault", inject_fault,
                   "break a solver on purpose (harness self-test)");

  CLI::App* gallery_cmd =
      app.add_subcommand("gallery", "list the gallery operators");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitBadInput;
  }

  if (compute->parsed()) return run_compute(compute_args);
  if (converge->parsed()) return run_converge(converge_args);
  if (axioms->parsed()) {
    if (axioms_trials < 1) {
      std::cerr << "usage error: --trials must be >= 1\n";
      return kExitBadInput;
    }
    return run_axioms(axioms_seed, axioms_trials, inject_fault);
  }
  if (gallery_cmd->parsed()) return run_gallery();
  return kExitBadInput;
}
