#ifndef DOFAM_SUITES_HPP
#define DOFAM_SUITES_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace dofam {

struct SuiteFailure {
  /// Seed that replays this case alone with run_suite_case.
  std::uint64_t case_seed = 0;
  std::string message;
};

struct SuiteResult {
  std::string name;
  std::uint64_t seed = 0;
  std::size_t budget = 0;
  std::size_t cases = 0;
  /// Cases that met the hypotheses under test and so had their conclusion asserted.
  std::size_t asserted = 0;
  std::vector<SuiteFailure> failures;
  /// Logged observations that are not failures (for example expected divergences).
  std::vector<std::string> notes;
  std::map<std::string, std::size_t> counters;
  double wall_seconds = 0;

  bool ok() const { return failures.empty(); }
  double filter_pass_rate() const { return cases == 0 ? 0.0 : static_cast<double>(asserted) / cases; }
};

/// Outcome of one generated instance.
struct CaseOutcome {
  bool asserted = false;
  std::optional<std::string> failure;
  std::vector<std::string> notes;
  std::vector<std::string> tags;
};

const std::vector<std::string>& suite_names();
std::size_t default_budget(const std::string& name);

/// Runs `budget` cases (0 means the default) with case seeds mix_seed(seed, index).
/// Throws InputError for an unknown suite.
SuiteResult run_suite(const std::string& name, std::uint64_t seed, std::size_t budget = 0);
CaseOutcome run_suite_case(const std::string& name, std::uint64_t case_seed);

nlohmann::json suite_result_to_json(const SuiteResult& r);

}  // namespace dofam

#endif
