#pragma once

#include <string>
#include <vector>

#include <schur/types.hpp>

namespace demos {

// One checked statement with its measured numbers.
struct ClaimResult {
  std::string label;
  bool pass = false;
  std::string detail;
};

struct DemoReport {
  std::string name;
  std::string summary;
  std::vector<std::string> notes;  // informational tables, no pass/fail weight
  std::vector<ClaimResult> claims;
  bool all_pass() const {
    for (const auto& c : claims)
      if (!c.pass) return false;
    return true;
  }
};

const std::vector<std::string>& names();
bool known(const std::string& name);

// Runs the named scripted scenario. Scenario parameters are pinned in code;
// `deltas` feeds only the stacked-mode demo (empty selects its default
// ladder). Unknown names throw std::invalid_argument.
DemoReport run(const std::string& name, const std::vector<double>& deltas,
               const schur::Tolerances& tol);

}  // namespace demos
