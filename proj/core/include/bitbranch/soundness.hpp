#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bitbranch/reach.hpp"
#include "bitbranch/transform.hpp"

namespace bitbranch {

enum class InclusionStatus { Holds, Fails, Inconclusive };
std::string_view to_string(InclusionStatus s);

struct InclusionVerdict {
  InclusionStatus status = InclusionStatus::Inconclusive;
  bool holds() const { return status == InclusionStatus::Holds; }
  /// Observation of P with no counterpart in T(P); present whenever the
  /// verdict is Fails.
  std::optional<Observation> witness;
  std::vector<Ident> projected_vars;
  std::size_t observed_p = 0;
  std::size_t observed_t = 0;
  bool error_p = false;
  bool error_t = false;
  bool exhausted_p = false;
  bool exhausted_t = false;
};

/// Observation-set inclusion between P and its transformation, both
/// explored at the same width. A bound-exhausted run on either side can
/// never produce Holds; Fails additionally requires the transformed side to
/// have reached fixpoint.
InclusionVerdict check_inclusion(const Program& p, const TransformOptions& opts,
                                 const MachineConfig& cfg,
                                 std::size_t step_bound,
                                 std::span<const Rule> catalog = rule_catalog());
std::string to_json(const InclusionVerdict& v);

enum class SafetyClass { Safe, TrueAlarm, SpuriousAlarm, Inconclusive };
std::string_view to_string(SafetyClass c);

struct SafetyReport {
  SafetyClass classification = SafetyClass::Inconclusive;
  int width = 0;
  std::size_t step_bound = 0;
  bool error_t = false;
  bool error_p = false;
  bool exhausted_t = false;
  bool exhausted_p = false;
  std::string message;
};

/// Runs reachability on T(P); an unreached error certifies P safe. A
/// reached error is classified against P itself: true alarm or spurious
/// alarm from over-approximation.
SafetyReport certify_safety(const Program& p, const TransformOptions& opts,
                            const MachineConfig& cfg, std::size_t step_bound,
                            std::span<const Rule> catalog = rule_catalog());
std::string to_json(const SafetyReport& r);

struct FuzzFailure {
  std::uint64_t program_seed = 0;
  std::string program_text;
  std::string kind;  // "inclusion" | "error-monotonicity" | "unreplayable-witness"
  std::optional<Observation> witness;
};

struct FuzzResult {
  int checked = 0;
  int holds = 0;
  int inconclusive = 0;
  int error_monotonicity_checked = 0;
  std::vector<FuzzFailure> failures;
};

/// Seeded random-program inclusion fuzzing. A candidate witness is replayed
/// through fresh reachability runs before it counts as a failure.
FuzzResult fuzz_inclusion(std::uint64_t seed, int count,
                          const MachineConfig& cfg, std::size_t step_bound);
std::string to_json(const FuzzResult& r);

}  // namespace bitbranch
