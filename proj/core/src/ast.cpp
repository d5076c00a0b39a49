#include "bitbranch/ast.hpp"

#include <algorithm>
#include <stdexcept>

namespace bitbranch {

bool is_bitvector_op(BinOp op) {
  switch (op) {
    case BinOp::BitAnd:
    case BinOp::BitOr:
    case BinOp::BitXor:
    case BinOp::Shl:
    case BinOp::Shr:
      return true;
    default:
      return false;
  }
}

bool is_relational_op(BinOp op) {
  switch (op) {
    case BinOp::Lt:
    case BinOp::Le:
    case BinOp::Gt:
    case BinOp::Ge:
    case BinOp::Eq:
    case BinOp::Ne:
      return true;
    default:
      return false;
  }
}

bool is_commutative_bitvector_op(BinOp op) {
  return op == BinOp::BitAnd || op == BinOp::BitOr || op == BinOp::BitXor;
}

std::string_view op_name(BinOp op) {
  switch (op) {
    case BinOp::Add: return "Add";
    case BinOp::Sub: return "Sub";
    case BinOp::Mul: return "Mul";
    case BinOp::Div: return "Div";
    case BinOp::Mod: return "Mod";
    case BinOp::BitAnd: return "BitAnd";
    case BinOp::BitOr: return "BitOr";
    case BinOp::BitXor: return "BitXor";
    case BinOp::Shl: return "Shl";
    case BinOp::Shr: return "Shr";
    case BinOp::Lt: return "Lt";
    case BinOp::Le: return "Le";
    case BinOp::Gt: return "Gt";
    case BinOp::Ge: return "Ge";
    case BinOp::Eq: return "Eq";
    case BinOp::Ne: return "Ne";
    case BinOp::LogAnd: return "LogAnd";
    case BinOp::LogOr: return "LogOr";
  }
  return "?";
}

std::string_view op_token(BinOp op) {
  switch (op) {
    case BinOp::Add: return "+";
    case BinOp::Sub: return "-";
    case BinOp::Mul: return "*";
    case BinOp::Div: return "/";
    case BinOp::Mod: return "%";
    case BinOp::BitAnd: return "&";
    case BinOp::BitOr: return "|";
    case BinOp::BitXor: return "^";
    case BinOp::Shl: return "<<";
    case BinOp::Shr: return ">>";
    case BinOp::Lt: return "<";
    case BinOp::Le: return "<=";
    case BinOp::Gt: return ">";
    case BinOp::Ge: return ">=";
    case BinOp::Eq: return "==";
    case BinOp::Ne: return "!=";
    case BinOp::LogAnd: return "&&";
    case BinOp::LogOr: return "||";
  }
  return "?";
}

std::string_view op_name(UnOp op) {
  switch (op) {
    case UnOp::Neg: return "Neg";
    case UnOp::LogNot: return "LogNot";
    case UnOp::BitNot: return "BitNot";
  }
  return "?";
}

std::string_view op_token(UnOp op) {
  switch (op) {
    case UnOp::Neg: return "-";
    case UnOp::LogNot: return "!";
    case UnOp::BitNot: return "~";
  }
  return "?";
}

ExprPtr lit(std::int64_t value) {
  return std::make_shared<const Expr>(Expr{LitExpr{value}});
}
ExprPtr boolean(bool value) {
  return std::make_shared<const Expr>(Expr{BoolExpr{value}});
}
ExprPtr var(Ident name) {
  return std::make_shared<const Expr>(Expr{VarExpr{std::move(name)}});
}
ExprPtr var(std::string name) { return var(Ident{std::move(name)}); }
ExprPtr width() { return std::make_shared<const Expr>(Expr{WidthExpr{}}); }
ExprPtr unary(UnOp op, ExprPtr arg) {
  return std::make_shared<const Expr>(Expr{UnaryExpr{op, std::move(arg)}});
}
ExprPtr binary(BinOp op, ExprPtr lhs, ExprPtr rhs) {
  return std::make_shared<const Expr>(
      Expr{BinaryExpr{op, std::move(lhs), std::move(rhs)}});
}
ExprPtr ite(ExprPtr cond, ExprPtr then_arm, ExprPtr else_arm) {
  return std::make_shared<const Expr>(Expr{
      IteExpr{std::move(cond), std::move(then_arm), std::move(else_arm)}});
}
ExprPtr opaque(ExprPtr inner) {
  return std::make_shared<const Expr>(Expr{OpaqueExpr{std::move(inner)}});
}

bool equal(const Expr& a, const Expr& b) {
  if (a.node.index() != b.node.index()) return false;
  return std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        const auto& y = std::get<T>(b.node);
        if constexpr (std::is_same_v<T, LitExpr>) {
          return x.value == y.value;
        } else if constexpr (std::is_same_v<T, BoolExpr>) {
          return x.value == y.value;
        } else if constexpr (std::is_same_v<T, VarExpr>) {
          return x.name == y.name;
        } else if constexpr (std::is_same_v<T, WidthExpr>) {
          return true;
        } else if constexpr (std::is_same_v<T, UnaryExpr>) {
          return x.op == y.op && equal(*x.arg, *y.arg);
        } else if constexpr (std::is_same_v<T, BinaryExpr>) {
          return x.op == y.op && equal(*x.lhs, *y.lhs) && equal(*x.rhs, *y.rhs);
        } else if constexpr (std::is_same_v<T, IteExpr>) {
          return equal(*x.cond, *y.cond) && equal(*x.then_arm, *y.then_arm) &&
                 equal(*x.else_arm, *y.else_arm);
        } else {
          return equal(*x.inner, *y.inner);
        }
      },
      a.node);
}

namespace {

void collect_vars(const Expr& e, std::set<Ident>& out) {
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, VarExpr>) {
          out.insert(x.name);
        } else if constexpr (std::is_same_v<T, UnaryExpr>) {
          collect_vars(*x.arg, out);
        } else if constexpr (std::is_same_v<T, BinaryExpr>) {
          collect_vars(*x.lhs, out);
          collect_vars(*x.rhs, out);
        } else if constexpr (std::is_same_v<T, IteExpr>) {
          collect_vars(*x.cond, out);
          collect_vars(*x.then_arm, out);
          collect_vars(*x.else_arm, out);
        } else if constexpr (std::is_same_v<T, OpaqueExpr>) {
          collect_vars(*x.inner, out);
        }
      },
      e.node);
}

}  // namespace

std::set<Ident> free_vars(const Expr& e) {
  std::set<Ident> out;
  collect_vars(e, out);
  return out;
}

bool is_bitfree(const Expr& e) {
  return std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, UnaryExpr>) {
          return x.op != UnOp::BitNot && is_bitfree(*x.arg);
        } else if constexpr (std::is_same_v<T, BinaryExpr>) {
          return !is_bitvector_op(x.op) && is_bitfree(*x.lhs) &&
                 is_bitfree(*x.rhs);
        } else if constexpr (std::is_same_v<T, IteExpr>) {
          return is_bitfree(*x.cond) && is_bitfree(*x.then_arm) &&
                 is_bitfree(*x.else_arm);
        } else if constexpr (std::is_same_v<T, OpaqueExpr>) {
          return is_bitfree(*x.inner);
        } else {
          return true;
        }
      },
      e.node);
}

ExprPtr strip_opaque(const ExprPtr& e) {
  return std::visit(
      [&](const auto& x) -> ExprPtr {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, UnaryExpr>) {
          return unary(x.op, strip_opaque(x.arg));
        } else if constexpr (std::is_same_v<T, BinaryExpr>) {
          return binary(x.op, strip_opaque(x.lhs), strip_opaque(x.rhs));
        } else if constexpr (std::is_same_v<T, IteExpr>) {
          return ite(strip_opaque(x.cond), strip_opaque(x.then_arm),
                     strip_opaque(x.else_arm));
        } else if constexpr (std::is_same_v<T, OpaqueExpr>) {
          return strip_opaque(x.inner);
        } else {
          return e;
        }
      },
      e->node);
}

StmtPtr assign(Ident lhs, ExprPtr rhs, std::optional<int> origin) {
  return std::make_shared<const Stmt>(
      Stmt{AssignStmt{std::move(lhs), std::move(rhs)}, origin});
}
StmtPtr havoc(Ident target, std::optional<int> origin) {
  return std::make_shared<const Stmt>(Stmt{HavocStmt{std::move(target)}, origin});
}
StmtPtr assume(ExprPtr cond, std::optional<int> origin) {
  return std::make_shared<const Stmt>(Stmt{AssumeStmt{std::move(cond)}, origin});
}
StmtPtr error(std::optional<int> origin) {
  return std::make_shared<const Stmt>(Stmt{ErrorStmt{}, origin});
}
StmtPtr if_cond(ExprPtr cond, Block then_block, Block else_block,
                std::optional<int> origin) {
  return std::make_shared<const Stmt>(Stmt{
      IfCondStmt{std::move(cond), std::move(then_block), std::move(else_block)},
      origin});
}
StmtPtr if_nondet(Block then_block, Block else_block,
                  std::optional<int> origin) {
  return std::make_shared<const Stmt>(
      Stmt{IfNondetStmt{std::move(then_block), std::move(else_block)}, origin});
}
StmtPtr while_loop(ExprPtr cond, Block body, std::optional<int> origin) {
  return std::make_shared<const Stmt>(
      Stmt{WhileStmt{std::move(cond), std::move(body)}, origin});
}

bool equal(const Block& a, const Block& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!equal(*a[i], *b[i])) return false;
  }
  return true;
}

bool equal(const Stmt& a, const Stmt& b) {
  if (a.node.index() != b.node.index()) return false;
  return std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        const auto& y = std::get<T>(b.node);
        if constexpr (std::is_same_v<T, AssignStmt>) {
          return x.lhs == y.lhs && equal(*x.rhs, *y.rhs);
        } else if constexpr (std::is_same_v<T, HavocStmt>) {
          return x.target == y.target;
        } else if constexpr (std::is_same_v<T, AssumeStmt>) {
          return equal(*x.cond, *y.cond);
        } else if constexpr (std::is_same_v<T, ErrorStmt>) {
          return true;
        } else if constexpr (std::is_same_v<T, IfCondStmt>) {
          return equal(*x.cond, *y.cond) && equal(x.then_block, y.then_block) &&
                 equal(x.else_block, y.else_block);
        } else if constexpr (std::is_same_v<T, IfNondetStmt>) {
          return equal(x.then_block, y.then_block) &&
                 equal(x.else_block, y.else_block);
        } else {
          return equal(*x.cond, *y.cond) && equal(x.body, y.body);
        }
      },
      a.node);
}

bool equal(const Program& a, const Program& b) {
  return a.decls == b.decls && equal(a.body, b.body);
}

namespace {

bool check_stmt(const Stmt& s, const std::set<Ident>& declared,
                std::string* why);

bool check_expr(const Expr& e, const std::set<Ident>& declared,
                std::string* why) {
  for (const Ident& v : free_vars(e)) {
    if (!declared.count(v)) {
      if (why) *why = "undeclared variable: " + v.name;
      return false;
    }
  }
  return true;
}

bool check_block(const Block& b, const std::set<Ident>& declared,
                 std::string* why) {
  return std::all_of(b.begin(), b.end(), [&](const StmtPtr& s) {
    return check_stmt(*s, declared, why);
  });
}

bool check_stmt(const Stmt& s, const std::set<Ident>& declared,
                std::string* why) {
  return std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, AssignStmt>) {
          if (!declared.count(x.lhs)) {
            if (why) *why = "undeclared variable: " + x.lhs.name;
            return false;
          }
          return check_expr(*x.rhs, declared, why);
        } else if constexpr (std::is_same_v<T, HavocStmt>) {
          if (!declared.count(x.target)) {
            if (why) *why = "undeclared variable: " + x.target.name;
            return false;
          }
          return true;
        } else if constexpr (std::is_same_v<T, AssumeStmt>) {
          return check_expr(*x.cond, declared, why);
        } else if constexpr (std::is_same_v<T, ErrorStmt>) {
          return true;
        } else if constexpr (std::is_same_v<T, IfCondStmt>) {
          return check_expr(*x.cond, declared, why) &&
                 check_block(x.then_block, declared, why) &&
                 check_block(x.else_block, declared, why);
        } else if constexpr (std::is_same_v<T, IfNondetStmt>) {
          return check_block(x.then_block, declared, why) &&
                 check_block(x.else_block, declared, why);
        } else {
          return check_expr(*x.cond, declared, why) &&
                 check_block(x.body, declared, why);
        }
      },
      s.node);
}

StmtPtr renumber_stmt(const StmtPtr& s, int& counter);

Block renumber_block(const Block& b, int& counter) {
  Block out;
  out.reserve(b.size());
  for (const StmtPtr& s : b) out.push_back(renumber_stmt(s, counter));
  return out;
}

StmtPtr renumber_stmt(const StmtPtr& s, int& counter) {
  const int tag = counter++;
  return std::visit(
      [&](const auto& x) -> StmtPtr {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, IfCondStmt>) {
          auto then_b = renumber_block(x.then_block, counter);
          auto else_b = renumber_block(x.else_block, counter);
          return if_cond(x.cond, std::move(then_b), std::move(else_b), tag);
        } else if constexpr (std::is_same_v<T, IfNondetStmt>) {
          auto then_b = renumber_block(x.then_block, counter);
          auto else_b = renumber_block(x.else_block, counter);
          return if_nondet(std::move(then_b), std::move(else_b), tag);
        } else if constexpr (std::is_same_v<T, WhileStmt>) {
          auto body = renumber_block(x.body, counter);
          return while_loop(x.cond, std::move(body), tag);
        } else {
          return std::make_shared<const Stmt>(Stmt{x, tag});
        }
      },
      s->node);
}

void walk_tags(const Block& b, std::vector<int>& out, int& count) {
  for (const StmtPtr& s : b) {
    ++count;
    if (s->origin) out.push_back(*s->origin);
    std::visit(
        [&](const auto& x) {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, IfCondStmt> ||
                        std::is_same_v<T, IfNondetStmt>) {
            walk_tags(x.then_block, out, count);
            walk_tags(x.else_block, out, count);
          } else if constexpr (std::is_same_v<T, WhileStmt>) {
            walk_tags(x.body, out, count);
          }
        },
        s->node);
  }
}

}  // namespace

bool well_formed(const Program& p, std::string* why) {
  std::set<Ident> declared;
  for (const Ident& d : p.decls) {
    if (!declared.insert(d).second) {
      if (why) *why = "duplicate declaration: " + d.name;
      return false;
    }
  }
  return check_block(p.body, declared, why);
}

void renumber_origins(Program& p) {
  int counter = 0;
  p.body = renumber_block(p.body, counter);
}

std::vector<int> origin_tags(const Program& p) {
  std::vector<int> out;
  int count = 0;
  walk_tags(p.body, out, count);
  return out;
}

int statement_count(const Program& p) {
  std::vector<int> out;
  int count = 0;
  walk_tags(p.body, out, count);
  return count;
}

}  // namespace bitbranch
