#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace repgame::harness {

struct SuiteOptions {
  /// Worker threads for Monte Carlo trials; results do not depend on it.
  unsigned parallelism = 1;
};

struct SuiteResult {
  std::string name;
  int criterion = 0;
  bool pass = false;
  std::vector<std::string> details;
  nlohmann::json data = nlohmann::json::object();
};

/// Registered suite names in criterion order ("all" not included).
const std::vector<std::string>& suite_names();
bool is_suite(const std::string& name);

/// Runs one suite with its pinned seeds and budgets. Throws std::out_of_range
/// for an unknown name.
SuiteResult run_suite(const std::string& name, const SuiteOptions& options = {});

/// `name` may be "all".
std::vector<SuiteResult> verify(const std::string& name, const SuiteOptions& options = {});

nlohmann::json to_json(const SuiteResult& r);

}  // namespace repgame::harness
