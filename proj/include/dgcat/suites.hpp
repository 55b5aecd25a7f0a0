#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace dgcat {

struct SuiteOptions {
  int p_max = 0;          // 0 selects the suite default
  int n_max = 0;          // 0 selects the suite default
  int xmax = 0;           // 0 selects 2pq
  std::uint64_t seed = 20240611;
  int cases = 0;          // 0 selects the suite default
  int p = 0;              // with q, restricts lens suites to one (p, q)
  int q = 0;
  int n = 0;              // restricts lens suites to one n
  std::function<void(const std::string&)> progress;
};

struct SuiteReport {
  SuiteReport() = default;
  explicit SuiteReport(std::string suite_name) : name(std::move(suite_name)) {}

  std::string name;
  bool ok = true;
  long long cases = 0;
  std::vector<std::string> failures;
  std::vector<std::string> notes;

  void fail(std::string message);
  nlohmann::json to_json() const;
};

// Names accepted by run_suite, in a fixed order.
const std::vector<std::string>& suite_names();

// Throws PreconditionError for an unknown name.
SuiteReport run_suite(const std::string& name, const SuiteOptions& options = {});

}  // namespace dgcat
