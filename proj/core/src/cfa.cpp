#include "bitbranch/cfa.hpp"

#include <stdexcept>

#include "bitbranch/print.hpp"

namespace bitbranch {

namespace {

class Builder {
 public:
  explicit Builder(const Program& p) {
    cfa_.vars = p.decls;
    if (p.body.empty()) return;  // a single location, no edges
    const int exit = new_location();
    block(p.body, cfa_.initial, exit);
  }

  Cfa take() { return std::move(cfa_); }

 private:
  int new_location() { return cfa_.location_count++; }

  int error_location() {
    if (!cfa_.error_location) cfa_.error_location = new_location();
    return *cfa_.error_location;
  }

  void edge(int from, StmtPtr s, int to) {
    cfa_.edges.push_back(CfaEdge{from, std::move(s), to});
  }

  void block(const Block& b, int entry, int exit) {
    if (b.empty()) {
      // Empty branch: a skip edge keeps every edge statement-labeled.
      edge(entry, assume(boolean(true)), exit);
      return;
    }
    int at = entry;
    for (std::size_t i = 0; i < b.size(); ++i) {
      const int next = (i + 1 == b.size()) ? exit : new_location();
      stmt(b[i], at, next);
      at = next;
    }
  }

  void stmt(const StmtPtr& s, int entry, int exit) {
    std::visit(
        [&](const auto& x) {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, AssignStmt> ||
                        std::is_same_v<T, HavocStmt> ||
                        std::is_same_v<T, AssumeStmt>) {
            edge(entry, s, exit);
          } else if constexpr (std::is_same_v<T, ErrorStmt>) {
            edge(entry, s, error_location());
          } else if constexpr (std::is_same_v<T, IfCondStmt>) {
            throw std::invalid_argument(
                "build_cfa requires a branch-normalized program");
          } else if constexpr (std::is_same_v<T, IfNondetStmt>) {
            block(x.then_block, entry, exit);
            block(x.else_block, entry, exit);
          } else {  // WhileStmt: assume(c)/assume(!c) edges, back edge
            const int body_entry = new_location();
            edge(entry, assume(x.cond, s->origin), body_entry);
            edge(entry, assume(unary(UnOp::LogNot, x.cond), s->origin), exit);
            block(x.body, body_entry, entry);
          }
        },
        s->node);
  }

  Cfa cfa_;
};

std::string escape_label(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

Cfa build_cfa(const Program& p) {
  Builder b(p);
  return b.take();
}

std::string to_dot(const Cfa& cfa) {
  std::string out = "digraph cfa {\n";
  out += "  rankdir=TB;\n";
  out += "  node [shape=circle];\n";
  for (int q = 0; q < cfa.location_count; ++q) {
    if (cfa.error_location && q == *cfa.error_location) {
      out += "  q" + std::to_string(q) + " [label=\"err\", shape=doublecircle];\n";
    } else if (q == cfa.initial) {
      out += "  q" + std::to_string(q) + " [label=\"q" + std::to_string(q) +
             "\", penwidth=2];\n";
    } else {
      out += "  q" + std::to_string(q) + " [label=\"q" + std::to_string(q) +
             "\"];\n";
    }
  }
  for (const CfaEdge& e : cfa.edges) {
    out += "  q" + std::to_string(e.from) + " -> q" + std::to_string(e.to) +
           " [label=\"" + escape_label(print_stmt_inline(*e.stmt)) + "\"];\n";
  }
  out += "}\n";
  return out;
}

}  // namespace bitbranch
