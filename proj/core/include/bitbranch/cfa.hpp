#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bitbranch/ast.hpp"

namespace bitbranch {

/// Control-flow automaton: locations plus edges labeled with
/// loop/branch-free statements.
struct CfaEdge {
  int from = 0;
  StmtPtr stmt;
  int to = 0;
};

struct Cfa {
  int location_count = 1;
  int initial = 0;
  std::optional<int> error_location;
  std::vector<Ident> vars;
  std::vector<CfaEdge> edges;
};

/// Requires a branch-normalized program (no deterministic if); throws
/// std::invalid_argument otherwise. Loops become assume(c)/assume(!c) edge
/// pairs with a back edge; error statements lead to a distinguished error
/// location.
Cfa build_cfa(const Program& p);

std::string to_dot(const Cfa& cfa);

}  // namespace bitbranch
