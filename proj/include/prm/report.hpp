#ifndef PRM_REPORT_HPP
#define PRM_REPORT_HPP

#include <string>
#include <vector>

#include "prm/json_util.hpp"

namespace prm {

// Outcome of one named check. detail explains failures (and may carry a
// short summary on success).
struct CheckResult {
  std::string name;
  bool ok = true;
  std::string detail;
};

struct Report {
  std::vector<CheckResult> checks;

  void add(std::string name, bool ok, std::string detail = {}) {
    checks.push_back({std::move(name), ok, std::move(detail)});
  }
  bool ok() const {
    for (const auto& c : checks)
      if (!c.ok) return false;
    return true;
  }
  std::vector<std::string> failures() const {
    std::vector<std::string> out;
    for (const auto& c : checks)
      if (!c.ok) out.push_back(c.name);
    return out;
  }
  void merge(const Report& other) {
    checks.insert(checks.end(), other.checks.begin(), other.checks.end());
  }
  Json to_json() const {
    Json arr = Json::array();
    for (const auto& c : checks) arr.push_back({{"name", c.name}, {"ok", c.ok}, {"detail", c.detail}});
    return {{"ok", ok()}, {"checks", arr}};
  }
};

}  // namespace prm

#endif  // PRM_REPORT_HPP
