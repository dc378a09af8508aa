#pragma once

#include <functional>
#include <string>
#include <vector>

namespace lca::cli {

// One checked output: basis says where the expected value comes from.
struct DemoCheck {
  std::string name, expected, got, basis;
  bool pass() const { return expected == got; }
};

struct DemoScenario {
  std::string id, description;
  std::function<std::vector<DemoCheck>()> run;
};

const std::vector<DemoScenario>& demo_registry();

// Tab-separated "id/check  expected  got  PASS|FAIL" lines; a scenario that throws reports
// a single FAIL line with the error.
std::vector<std::string> run_scenario(const DemoScenario& s, bool& all_pass);

}  // namespace lca::cli
