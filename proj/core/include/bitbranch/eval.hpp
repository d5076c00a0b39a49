#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string_view>
#include <vector>

#include "bitbranch/ast.hpp"

namespace bitbranch {

/// Two's-complement machine with 2..16 value bits.
struct MachineConfig {
  int width = 4;

  std::int64_t min_value() const { return -(std::int64_t{1} << (width - 1)); }
  std::int64_t max_value() const {
    return (std::int64_t{1} << (width - 1)) - 1;
  }
  /// Reinterprets the low `width` bits of v as a signed value.
  std::int64_t wrap(std::int64_t v) const;
  /// Low `width` bits of v.
  std::uint64_t pattern(std::int64_t v) const;
};

using State = std::map<Ident, std::int64_t>;

enum class FaultKind { DivByZero, ShiftOutOfRange };
std::string_view fault_name(FaultKind k);

struct EvalFault {
  FaultKind kind;
  std::optional<int> origin;
  auto operator<=>(const EvalFault&) const = default;
};

class EvalResult {
 public:
  static EvalResult ok(std::int64_t v) {
    EvalResult r;
    r.value_ = v;
    return r;
  }
  static EvalResult fault(FaultKind k) {
    EvalResult r;
    r.fault_ = k;
    return r;
  }
  bool is_fault() const { return fault_.has_value(); }
  std::int64_t value() const { return value_; }
  FaultKind fault_kind() const { return *fault_; }

 private:
  std::int64_t value_ = 0;
  std::optional<FaultKind> fault_;
};

// Arithmetic shared by every evaluator. +,-,* wrap; / and % truncate toward
// zero; & | ^ ~ act on the bit pattern; << is logical, >> is arithmetic
// (sign-propagating); relational operators yield 0/1. Short-circuiting of
// && and || is the tree-walker's job, not handled here.
EvalResult apply_binop(BinOp op, std::int64_t lhs, std::int64_t rhs,
                       const MachineConfig& cfg);
EvalResult apply_unop(UnOp op, std::int64_t v, const MachineConfig& cfg);

/// Evaluates e under sigma. Free variables of e must be bound in sigma;
/// an unbound variable is a caller bug and throws std::invalid_argument.
EvalResult eval_expr(const Expr& e, const State& sigma,
                     const MachineConfig& cfg);
inline EvalResult eval_expr(const ExprPtr& e, const State& sigma,
                            const MachineConfig& cfg) {
  return eval_expr(*e, sigma, cfg);
}

/// Successor states of executing one statement from sigma. Compound
/// statements are explored with the bounded engine; step_bound caps that
/// exploration.
struct StepResult {
  std::vector<State> states;
  bool error = false;
  std::vector<EvalFault> faults;
};
StepResult exec_stmt(const Stmt& s, const State& sigma,
                     const MachineConfig& cfg, std::size_t step_bound = 10000);

}  // namespace bitbranch
