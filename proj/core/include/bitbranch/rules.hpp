#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bitbranch/ast.hpp"

namespace bitbranch {

enum class RuleKind { Rewrite, Weaken };

/// Relational classes of the weakening rules. Assignment (:=) belongs to all
/// three classes; rel_class_contains covers condition relators only.
enum class RelClass { OpLe, OpGe, OpEq };

bool rel_class_contains(RelClass c, BinOp relator);
/// Relators enumerated by the exhaustive checker, with := read as ==
/// (so OpLe and OpGe yield four entries, OpEq two).
std::vector<BinOp> rel_class_check_relators(RelClass c);
std::string_view rel_class_name(RelClass c);

/// One catalog entry. Templates are expressions over the hole variables
/// e1, e2 (operands) and r (weakening relatum); both are bitvector-free.
struct Rule {
  std::string id;
  RuleKind kind = RuleKind::Rewrite;
  std::optional<BinOp> op;    // matched binary bitvector operator
  bool complement = false;    // matches unary ~ instead of a binary op
  std::optional<RelClass> rel_class;  // weakening rules only
  int const_operand = 0;      // 1 or 2: that operand must be a literal
  bool zero_relatum = false;  // matches only the `(e1 op e2) == 0` shape
  ExprPtr condition;
  ExprPtr replacement;        // rewrite: expression; weaken: constraint
  bool commuted = false;
};

/// The full catalog in its canonical order: 24 base rules, each commuted
/// variant directly after its base rule.
const std::vector<Rule>& rule_catalog();

const Rule* find_rule(std::span<const Rule> catalog, std::string_view id);
std::ptrdiff_t rule_index(std::span<const Rule> catalog, std::string_view id);

/// A concrete match: rule plus the substitution for its holes.
struct RuleInstance {
  std::size_t rule_index = 0;
  ExprPtr e1;       // always bound
  ExprPtr e2;       // null for complement rules
  ExprPtr relatum;  // weakening only: assigned variable or opposite operand
};

/// Rewrite entries for a bitvector operator, in catalog order.
std::vector<RuleInstance> match_expr_rules(
    BinOp op, const ExprPtr& e1, const ExprPtr& e2,
    std::span<const Rule> catalog = rule_catalog());

/// Weakening entries matching an assignment whose right-hand side is a
/// bitvector operation (:= is in every relational class).
std::vector<RuleInstance> match_assign_rules(
    const Ident& lhs, const Expr& rhs,
    std::span<const Rule> catalog = rule_catalog());

/// Weakening entries matching an assumed relation over a bitvector side.
/// Both orientations are tried; a bitvector expression on the left matches
/// through the mirrored relator.
std::vector<RuleInstance> match_assume_rules(
    const Expr& cond, std::span<const Rule> catalog = rule_catalog());

struct Instantiation {
  ExprPtr condition;
  ExprPtr replacement;
};
Instantiation instantiate(const RuleInstance& inst,
                          std::span<const Rule> catalog = rule_catalog());

/// Substitutes the holes e1, e2, r in a template. Null arguments leave the
/// corresponding hole untouched.
ExprPtr substitute(const ExprPtr& tmpl, const ExprPtr& e1, const ExprPtr& e2,
                   const ExprPtr& r);

}  // namespace bitbranch
