#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "bitbranch/ast.hpp"

namespace bitbranch {

struct ParseError : std::runtime_error {
  ParseError(const std::string& msg, int line, int column);
  int line;
  int column;
};

/// Parses the textual program form: declarations first, then statements.
/// Origin tags are assigned by preorder statement index. Throws ParseError
/// with position info on syntax errors, undeclared variables and duplicate
/// declarations.
Program parse_program(std::string_view text);

/// Parses a standalone expression (no declaration checking).
ExprPtr parse_expr(std::string_view text);

}  // namespace bitbranch
