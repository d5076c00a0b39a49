#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "bitbranch/ast.hpp"
#include "bitbranch/eval.hpp"

namespace bitbranch {

/// One recorded (statement origin, projected state) pair. Values align with
/// ReachResult::projected_vars.
struct Observation {
  int origin = -1;
  std::vector<std::int64_t> values;
  auto operator<=>(const Observation&) const = default;
};

struct ReachResult {
  std::vector<Ident> projected_vars;
  std::set<Observation> observed;
  bool error_reached = false;
  std::set<EvalFault> faults;
  bool exhausted = false;  // step bound hit before fixpoint
  std::size_t steps = 0;
};

/// Breadth-first exploration from the all-zeros state, memoizing visited
/// (location, state) pairs. After every executed statement an observation is
/// recorded. Stops at fixpoint or after step_bound statement executions,
/// whichever comes first. Faults are collected, never thrown.
ReachResult reachable(const Program& p, const MachineConfig& cfg,
                      std::size_t step_bound);

/// Same, projecting observations onto the given variables (used to compare a
/// transformed program against its source declarations).
ReachResult reachable(const Program& p, const MachineConfig& cfg,
                      std::size_t step_bound,
                      const std::vector<Ident>& project_onto);

std::string to_json(const ReachResult& r);

}  // namespace bitbranch
