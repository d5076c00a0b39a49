#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bitbranch/eval.hpp"
#include "bitbranch/rules.hpp"

namespace bitbranch {

struct RuleCounterexample {
  std::vector<std::pair<std::string, std::int64_t>> binding;  // hole -> value
  std::string relator;  // weakening rules only
  std::int64_t lhs = 0;
  std::int64_t rhs = 0;
  bool fault = false;
  std::string to_string() const;
};

struct RuleVerdict {
  std::string rule_id;
  int width = 0;
  bool pass = false;
  std::uint64_t checked = 0;
  std::optional<RuleCounterexample> counterexample;
};

/// Exhaustive enumeration over the operand cube at the given width.
/// Rewrite: whenever the condition holds, both sides must evaluate equal.
/// Weakening: for every relator in the rule's class (:= read as ==), the
/// condition plus the relation must imply the constraint. Faulting
/// evaluations count as violations, not vacuous passes.
RuleVerdict check_rule_correctness(const Rule& rule, const MachineConfig& cfg);

}  // namespace bitbranch
