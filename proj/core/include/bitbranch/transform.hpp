#pragma once

#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "bitbranch/ast.hpp"
#include "bitbranch/rules.hpp"

namespace bitbranch {

struct TransformOptions {
  /// Catalog ids to apply; disengaged means the whole catalog.
  std::optional<std::set<std::string>> enabled_rules;
  /// Cap on rule instances folded per site.
  std::optional<int> max_nesting;
  /// Prefix for generated operand-capture temporaries.
  std::string fresh_prefix = "_bb";
};

/// Replaces deterministic branching by nondeterministic branching with
/// assumed guards: if (b) {s1} else {s2} becomes
/// if (*) { assume(b); s1 } else { assume(!b); s2 }. Loops keep their
/// condition; the CFA builder turns it into assume(c)/assume(!c) edges.
Program branch_normalize(const Program& p);

/// Expression translation: operands first, then every enabled matching
/// rewrite instance folds into a conditional chain whose innermost else is
/// the original operation, wrapped Opaque. The first catalog rule becomes
/// the outermost guard. Guards that would not be bitvector-free (possible
/// only when an operand still carries a bitvector residue) are skipped.
ExprPtr transform_expr(const ExprPtr& e, const TransformOptions& opts = {},
                       std::span<const Rule> catalog = rule_catalog());

/// Fresh-name source scoped to one transformation run.
class FreshNames {
 public:
  FreshNames(std::string prefix, const std::vector<Ident>& taken);
  Ident next();
  const std::vector<Ident>& generated() const { return generated_; }

 private:
  std::string prefix_;
  std::set<std::string> taken_;
  std::vector<Ident> generated_;
  int counter_ = 0;
};

/// Statement translation. A weakened assignment expands into operand
/// capture plus a guarded havoc/assume chain, hence the Block result. Every
/// emitted statement carries the origin of s.
Block transform_stmt(const StmtPtr& s, FreshNames& fresh,
                     const TransformOptions& opts = {},
                     std::span<const Rule> catalog = rule_catalog());

Program transform_program(const Program& p, const TransformOptions& opts = {},
                          std::span<const Rule> catalog = rule_catalog());

}  // namespace bitbranch
