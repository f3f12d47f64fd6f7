#pragma once

#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "snlab/operators.hpp"

namespace snlab {

// Test-fixture hook: lets the CLI self-test its failure path by breaking
// the approximation solver's reported values on purpose.
enum class FaultInjection { none, break_approximation };

struct PropertyOutcome {
  std::string name;
  int total = 0;
  int failures = 0;
  nlohmann::ordered_json first_counterexample;  // null when all passed
};

struct AxiomSuiteReport {
  std::vector<PropertyOutcome> properties;
  bool all_passed = true;
};

// Runs the s-number invariant suite on `trials` seeded random instances:
// monotonicity in k, the rank property, the norm property s_1 = ||T||,
// domination of the other scales by the approximation numbers, and the
// Lipschitz inequality |s_k(A) - s_k(B)| <= ||A - B|| on (2,2) pairs.
AxiomSuiteReport run_axiom_suite(std::uint64_t seed, int trials,
                                 FaultInjection fault = FaultInjection::none);

}  // namespace snlab
