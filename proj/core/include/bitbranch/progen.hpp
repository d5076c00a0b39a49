#pragma once

#include <cstdint>
#include <vector>

#include "bitbranch/ast.hpp"
#include "bitbranch/eval.hpp"

namespace bitbranch {

struct GenOptions {
  int max_vars = 3;
  int max_loops = 2;
  int max_stmts = 8;
  int max_expr_depth = 3;
  bool allow_error = true;
};

/// Seeded random program. Shift amounts are literals in [0, width-1] and
/// divisors are nonzero literals, so fault paths stay rare; everything else
/// draws from the full operator set.
Program random_program(std::uint64_t seed, const MachineConfig& cfg,
                       const GenOptions& opts = {});

/// Seeded random expression over the given variables; exercises every node
/// kind (round-trip fodder).
ExprPtr random_expr(std::uint64_t seed, const std::vector<Ident>& vars,
                    int max_depth = 4);

}  // namespace bitbranch
