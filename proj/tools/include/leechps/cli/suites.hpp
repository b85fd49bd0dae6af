#pragma once

#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "leechps/budget.hpp"
#include "leechps/eval.hpp"

namespace leechps::cli {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string summary;
  double seconds = 0.0;
  nlohmann::json detail = nlohmann::json::object();
};

nlohmann::json to_json(const CheckResult& r);

struct SuiteInfo {
  std::string name;
  std::string title;
};

// Declaration order is the report order.
const std::vector<SuiteInfo>& suites();

struct SuiteContext {
  // Per-evaluation seconds for the slow suites; zero keeps each suite's own limit.
  double max_seconds = 0.0;
  std::ostream* log = nullptr;
};

// params accepts suite-specific narrowing, e.g. {"lattice": "e8", "qmax": 8} for theta.
CheckResult run_suite(const std::string& name, const SuiteContext& ctx, const nlohmann::json& params = {});

// Non-lattice point used by the cross-method and symmetry checks: small,
// irregular coordinates in the stored Leech basis.
std::vector<double> generic_point();

// Truncation used for the cross-method comparison at Re s = 30.
TruncationPolicy cross_check_policy();

}  // namespace leechps::cli
