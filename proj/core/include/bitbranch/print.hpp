#pragma once

#include <string>

#include "bitbranch/ast.hpp"

namespace bitbranch {

struct PrintOptions {
  bool annotate_origins = false;  // emit origin tags as trailing comments
};

/// Canonical form: one statement per line, minimal parentheses, two-space
/// block indentation. parse_program(pretty_print(p)) is structurally
/// identical to p.
std::string pretty_print(const Program& p, const PrintOptions& opts = {});
std::string pretty_print(const Expr& e);
std::string pretty_print(const ExprPtr& e);

/// One-line rendering of a loop/branch-free statement (CFA edge labels).
std::string print_stmt_inline(const Stmt& s);

}  // namespace bitbranch
