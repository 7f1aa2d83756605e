#pragma once

#include <string>
#include <vector>

namespace ppx {

struct VerifyOptions {
  int dim = 3;
  int max_cells = 12;
  std::string fixtures;  // directory holding the counterexample fixtures
  unsigned seed = 1;
};

// Default options: enumeration bounds from the environment, fixtures from
// PPX_FIXTURES or the source tree.
VerifyOptions default_verify_options();

struct CheckResult {
  int id = 0;
  std::string name;
  bool pass = false;
  long instances = 0;
  std::string detail;  // first failure, or a summary
};

constexpr int criterion_count = 12;
CheckResult run_criterion(int id, const VerifyOptions& opt);

// Suites: sigma, tensor, cone, anodyne, realize, roundtrip, all.
std::vector<int> suite_criteria(const std::string& suite);
std::vector<std::string> suite_names();

}  // namespace ppx
