#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

namespace cocylab {

struct Violation {
  std::string relation;
  nlohmann::json inputs;
  nlohmann::json lhs;
  nlohmann::json rhs;
};

/// Result of checking an identity over a sample. Only the first `kept`
/// counterexamples are stored; `violation_count` counts all of them.
struct AuditReport {
  static constexpr std::size_t kept = 10;

  std::size_t checked = 0;
  std::size_t violation_count = 0;
  std::vector<Violation> violations;
  std::vector<std::string> warnings;

  bool clean() const { return violation_count == 0; }

  void record(Violation v) {
    ++violation_count;
    if (violations.size() < kept) violations.push_back(std::move(v));
  }

  void merge(const AuditReport& other) {
    checked += other.checked;
    violation_count += other.violation_count;
    for (const auto& v : other.violations)
      if (violations.size() < kept) violations.push_back(v);
    warnings.insert(warnings.end(), other.warnings.begin(), other.warnings.end());
  }
};

inline nlohmann::json to_json(const Violation& v) {
  return {{"relation", v.relation}, {"inputs", v.inputs}, {"lhs", v.lhs}, {"rhs", v.rhs}};
}

inline nlohmann::json to_json(const AuditReport& r) {
  nlohmann::json vs = nlohmann::json::array();
  for (const auto& v : r.violations) vs.push_back(to_json(v));
  nlohmann::json out{{"checked", r.checked}, {"violation_count", r.violation_count}, {"violations", vs}};
  if (!r.warnings.empty()) out["warnings"] = r.warnings;
  return out;
}

}  // namespace cocylab
