#pragma once

#include <nlohmann/json.hpp>

#include <string>
#include <vector>

namespace ncfree::cli {

struct SuiteResult {
  std::string name;
  bool pass = false;
  std::string failure;  // first failing item, empty on pass
  nlohmann::json report;
};

/// Names accepted by `verify --suite`, excluding "all".
const std::vector<std::string>& suite_names();

/// Throws std::invalid_argument for an unknown name.
SuiteResult run_suite(const std::string& name);

}  // namespace ncfree::cli
