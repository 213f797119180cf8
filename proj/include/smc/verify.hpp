#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace smc {

struct CriterionResult {
  std::string id;
  std::string description;
  std::string measured;
  std::string expected;
  std::string tolerance;
  bool pass = false;
};

/// reaching, disturbance, gradients, lyapunov, all
const std::vector<std::string>& known_suites();

/// Runs the acceptance checks grouped under `suite`. Throws ParameterError
/// for an unknown suite name.
std::vector<CriterionResult> run_suite(const std::string& suite);

void print_results(const std::vector<CriterionResult>& results, std::ostream& out);
bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace smc
