#include "bitbranch/print.hpp"

#include <string>

namespace bitbranch {

namespace {

// Higher binds tighter. The ternary sits at 0; atoms never need parens.
int prec_of(BinOp op) {
  switch (op) {
    case BinOp::LogOr: return 1;
    case BinOp::LogAnd: return 2;
    case BinOp::Lt:
    case BinOp::Le:
    case BinOp::Gt:
    case BinOp::Ge:
    case BinOp::Eq:
    case BinOp::Ne: return 3;
    case BinOp::BitOr: return 4;
    case BinOp::BitXor: return 5;
    case BinOp::BitAnd: return 6;
    case BinOp::Add:
    case BinOp::Sub: return 7;
    case BinOp::Mul:
    case BinOp::Div:
    case BinOp::Mod: return 8;
    case BinOp::Shl:
    case BinOp::Shr: return 9;
  }
  return 11;
}

constexpr int kUnaryPrec = 10;

// Canonical form keeps the conventional clarifying parentheses around
// arithmetic and shift operands of bitwise and relational operators
// ("s & (1 - s)", "(1 - s) == 1"), on top of the precedence-minimal ones.
bool wants_clarifying_parens(int parent_prec, const Expr& child) {
  if (parent_prec < 3 || parent_prec > 6) return false;
  const auto* b = std::get_if<BinaryExpr>(&child.node);
  return b != nullptr && prec_of(b->op) >= 7;
}

void print_expr(std::string& out, const Expr& e, int min_prec) {
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, LitExpr>) {
          out += std::to_string(x.value);
        } else if constexpr (std::is_same_v<T, BoolExpr>) {
          out += x.value ? "true" : "false";
        } else if constexpr (std::is_same_v<T, VarExpr>) {
          out += x.name.name;
        } else if constexpr (std::is_same_v<T, WidthExpr>) {
          out += "WIDTH";
        } else if constexpr (std::is_same_v<T, UnaryExpr>) {
          const bool parens = kUnaryPrec < min_prec;
          if (parens) out += '(';
          out += op_token(x.op);
          print_expr(out, *x.arg, kUnaryPrec);
          if (parens) out += ')';
        } else if constexpr (std::is_same_v<T, BinaryExpr>) {
          const int p = prec_of(x.op);
          const bool parens = p < min_prec;
          if (parens) out += '(';
          print_expr(out, *x.lhs,
                     wants_clarifying_parens(p, *x.lhs) ? 12 : p);
          out += ' ';
          out += op_token(x.op);
          out += ' ';
          print_expr(out, *x.rhs,
                     wants_clarifying_parens(p, *x.rhs) ? 12 : p + 1);
          if (parens) out += ')';
        } else if constexpr (std::is_same_v<T, IteExpr>) {
          const bool parens = 0 < min_prec;
          if (parens) out += '(';
          print_expr(out, *x.cond, 1);
          out += " ? ";
          print_expr(out, *x.then_arm, 0);
          out += " : ";
          // An else-nested chain always prints parenthesized.
          print_expr(out, *x.else_arm, 1);
          if (parens) out += ')';
        } else {
          out += "@(";
          print_expr(out, *x.inner, 0);
          out += ')';
        }
      },
      e.node);
}

void append_annotation(std::string& out, const Stmt& s,
                       const PrintOptions& opts) {
  if (opts.annotate_origins && s.origin) {
    out += "  // #" + std::to_string(*s.origin);
  }
}

void print_stmt(std::string& out, const Stmt& s, int indent,
                const PrintOptions& opts);

void print_block(std::string& out, const Block& b, int indent,
                 const PrintOptions& opts) {
  for (const StmtPtr& s : b) print_stmt(out, *s, indent, opts);
}

void print_stmt(std::string& out, const Stmt& s, int indent,
                const PrintOptions& opts) {
  const std::string ind(static_cast<std::size_t>(indent) * 2, ' ');
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, AssignStmt>) {
          out += ind + x.lhs.name + " := ";
          print_expr(out, *x.rhs, 0);
          out += ';';
          append_annotation(out, s, opts);
          out += '\n';
        } else if constexpr (std::is_same_v<T, HavocStmt>) {
          out += ind + "havoc " + x.target.name + ';';
          append_annotation(out, s, opts);
          out += '\n';
        } else if constexpr (std::is_same_v<T, AssumeStmt>) {
          out += ind + "assume(";
          print_expr(out, *x.cond, 0);
          out += ");";
          append_annotation(out, s, opts);
          out += '\n';
        } else if constexpr (std::is_same_v<T, ErrorStmt>) {
          out += ind + "error;";
          append_annotation(out, s, opts);
          out += '\n';
        } else if constexpr (std::is_same_v<T, IfCondStmt>) {
          out += ind + "if (";
          print_expr(out, *x.cond, 0);
          out += ") {";
          append_annotation(out, s, opts);
          out += '\n';
          print_block(out, x.then_block, indent + 1, opts);
          if (x.else_block.empty()) {
            out += ind + "}\n";
          } else {
            out += ind + "} else {\n";
            print_block(out, x.else_block, indent + 1, opts);
            out += ind + "}\n";
          }
        } else if constexpr (std::is_same_v<T, IfNondetStmt>) {
          out += ind + "if (*) {";
          append_annotation(out, s, opts);
          out += '\n';
          print_block(out, x.then_block, indent + 1, opts);
          if (x.else_block.empty()) {
            out += ind + "}\n";
          } else {
            out += ind + "} else {\n";
            print_block(out, x.else_block, indent + 1, opts);
            out += ind + "}\n";
          }
        } else {
          out += ind + "while (";
          print_expr(out, *x.cond, 0);
          out += ") {";
          append_annotation(out, s, opts);
          out += '\n';
          print_block(out, x.body, indent + 1, opts);
          out += ind + "}\n";
        }
      },
      s.node);
}

}  // namespace

std::string pretty_print(const Program& p, const PrintOptions& opts) {
  std::string out;
  for (const Ident& d : p.decls) out += "var " + d.name + ";\n";
  print_block(out, p.body, 0, opts);
  return out;
}

std::string pretty_print(const Expr& e) {
  std::string out;
  print_expr(out, e, 0);
  return out;
}

std::string pretty_print(const ExprPtr& e) { return pretty_print(*e); }

std::string print_stmt_inline(const Stmt& s) {
  std::string out;
  print_stmt(out, s, 0, PrintOptions{});
  // Drop the trailing newline; edge statements are single-line.
  while (!out.empty() && out.back() == '\n') out.pop_back();
  return out;
}

}  // namespace bitbranch
