#pragma once

#include <string>
#include <string_view>

#include "bitbranch/ast.hpp"

namespace bitbranch {

// One JSON object per node: {"node": <variant-name>, fields...}. Integers
// are encoded as decimal strings so 64-bit values survive lossy readers.
std::string to_json(const Program& p);
std::string to_json(const Expr& e);

Program program_from_json(std::string_view text);
ExprPtr expr_from_json(std::string_view text);

}  // namespace bitbranch
