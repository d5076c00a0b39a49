#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace bitbranch {

/// Program variable name. The parser guarantees names are well formed and
/// distinct from reserved words; programmatic constructors trust the caller.
struct Ident {
  std::string name;
  auto operator<=>(const Ident&) const = default;
};

enum class BinOp {
  Add,
  Sub,
  Mul,
  Div,
  Mod,
  BitAnd,
  BitOr,
  BitXor,
  Shl,
  Shr,
  Lt,
  Le,
  Gt,
  Ge,
  Eq,
  Ne,
  LogAnd,
  LogOr,
};

enum class UnOp { Neg, LogNot, BitNot };

bool is_bitvector_op(BinOp op);           // & | ^ << >>
bool is_relational_op(BinOp op);          // < <= > >= == !=
bool is_commutative_bitvector_op(BinOp op);  // & | ^

std::string_view op_name(BinOp op);   // enum spelling, used by the JSON form
std::string_view op_token(BinOp op);  // concrete-syntax token
std::string_view op_name(UnOp op);
std::string_view op_token(UnOp op);

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct LitExpr {
  std::int64_t value = 0;
};
struct BoolExpr {
  bool value = false;
};
struct VarExpr {
  Ident name;
};
struct WidthExpr {};  // the symbolic machine width
struct UnaryExpr {
  UnOp op;
  ExprPtr arg;
};
struct BinaryExpr {
  BinOp op;
  ExprPtr lhs;
  ExprPtr rhs;
};
struct IteExpr {
  ExprPtr cond;
  ExprPtr then_arm;
  ExprPtr else_arm;
};
/// Residual bitvector expression left behind by the transformer. Passes do
/// not descend into it; evaluation and free_vars look straight through.
struct OpaqueExpr {
  ExprPtr inner;
};

struct Expr {
  std::variant<LitExpr, BoolExpr, VarExpr, WidthExpr, UnaryExpr, BinaryExpr,
               IteExpr, OpaqueExpr>
      node;
};

ExprPtr lit(std::int64_t value);
ExprPtr boolean(bool value);
ExprPtr var(Ident name);
ExprPtr var(std::string name);
ExprPtr width();
ExprPtr unary(UnOp op, ExprPtr arg);
ExprPtr binary(BinOp op, ExprPtr lhs, ExprPtr rhs);
ExprPtr ite(ExprPtr cond, ExprPtr then_arm, ExprPtr else_arm);
ExprPtr opaque(ExprPtr inner);

bool equal(const Expr& a, const Expr& b);
inline bool equal(const ExprPtr& a, const ExprPtr& b) { return equal(*a, *b); }

std::set<Ident> free_vars(const Expr& e);

/// True iff the expression contains no bitvector operator anywhere,
/// including inside Opaque wrappers.
bool is_bitfree(const Expr& e);
inline bool is_bitfree(const ExprPtr& e) { return is_bitfree(*e); }

/// Deep copy with every Opaque wrapper removed.
ExprPtr strip_opaque(const ExprPtr& e);

struct Stmt;
using StmtPtr = std::shared_ptr<const Stmt>;
using Block = std::vector<StmtPtr>;

struct AssignStmt {
  Ident lhs;
  ExprPtr rhs;
};
struct HavocStmt {
  Ident target;
};
struct AssumeStmt {
  ExprPtr cond;
};
struct ErrorStmt {};
struct IfCondStmt {
  ExprPtr cond;
  Block then_block;
  Block else_block;
};
struct IfNondetStmt {
  Block then_block;
  Block else_block;
};
struct WhileStmt {
  ExprPtr cond;
  Block body;
};

struct Stmt {
  std::variant<AssignStmt, HavocStmt, AssumeStmt, ErrorStmt, IfCondStmt,
               IfNondetStmt, WhileStmt>
      node;
  std::optional<int> origin;  // source statement index this derives from
};

StmtPtr assign(Ident lhs, ExprPtr rhs, std::optional<int> origin = {});
StmtPtr havoc(Ident target, std::optional<int> origin = {});
StmtPtr assume(ExprPtr cond, std::optional<int> origin = {});
StmtPtr error(std::optional<int> origin = {});
StmtPtr if_cond(ExprPtr cond, Block then_block, Block else_block,
                std::optional<int> origin = {});
StmtPtr if_nondet(Block then_block, Block else_block,
                  std::optional<int> origin = {});
StmtPtr while_loop(ExprPtr cond, Block body, std::optional<int> origin = {});

// Structural equality; origin tags are metadata and do not participate.
bool equal(const Stmt& a, const Stmt& b);
bool equal(const Block& a, const Block& b);

struct Program {
  std::vector<Ident> decls;
  Block body;
};

bool equal(const Program& a, const Program& b);

/// Declaration discipline: unique decls, and every identifier used in the
/// body is declared.
bool well_formed(const Program& p, std::string* why = nullptr);

/// Tags every statement with its preorder index. Applied to every freshly
/// parsed program.
void renumber_origins(Program& p);

/// Origin tags of all statements, preorder; untagged statements are skipped.
std::vector<int> origin_tags(const Program& p);

int statement_count(const Program& p);

}  // namespace bitbranch
