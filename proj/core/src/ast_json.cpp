#include "bitbranch/ast_json.hpp"

#include <stdexcept>

#include "json.hpp"

namespace bitbranch {

namespace {

using json = nlohmann::ordered_json;

json expr_to_json(const Expr& e) {
  return std::visit(
      [&](const auto& x) -> json {
        using T = std::decay_t<decltype(x)>;
        json j;
        if constexpr (std::is_same_v<T, LitExpr>) {
          j["node"] = "lit";
          j["value"] = std::to_string(x.value);
        } else if constexpr (std::is_same_v<T, BoolExpr>) {
          j["node"] = "bool";
          j["value"] = x.value;
        } else if constexpr (std::is_same_v<T, VarExpr>) {
          j["node"] = "var";
          j["name"] = x.name.name;
        } else if constexpr (std::is_same_v<T, WidthExpr>) {
          j["node"] = "width";
        } else if constexpr (std::is_same_v<T, UnaryExpr>) {
          j["node"] = "unary";
          j["op"] = std::string(op_name(x.op));
          j["arg"] = expr_to_json(*x.arg);
        } else if constexpr (std::is_same_v<T, BinaryExpr>) {
          j["node"] = "binary";
          j["op"] = std::string(op_name(x.op));
          j["lhs"] = expr_to_json(*x.lhs);
          j["rhs"] = expr_to_json(*x.rhs);
        } else if constexpr (std::is_same_v<T, IteExpr>) {
          j["node"] = "ite";
          j["cond"] = expr_to_json(*x.cond);
          j["then"] = expr_to_json(*x.then_arm);
          j["else"] = expr_to_json(*x.else_arm);
        } else {
          j["node"] = "opaque";
          j["inner"] = expr_to_json(*x.inner);
        }
        return j;
      },
      e.node);
}

json stmt_to_json(const Stmt& s);

json block_to_json(const Block& b) {
  json arr = json::array();
  for (const StmtPtr& s : b) arr.push_back(stmt_to_json(*s));
  return arr;
}

json stmt_to_json(const Stmt& s) {
  json j = std::visit(
      [&](const auto& x) -> json {
        using T = std::decay_t<decltype(x)>;
        json j;
        if constexpr (std::is_same_v<T, AssignStmt>) {
          j["node"] = "assign";
          j["lhs"] = x.lhs.name;
          j["rhs"] = expr_to_json(*x.rhs);
        } else if constexpr (std::is_same_v<T, HavocStmt>) {
          j["node"] = "havoc";
          j["var"] = x.target.name;
        } else if constexpr (std::is_same_v<T, AssumeStmt>) {
          j["node"] = "assume";
          j["cond"] = expr_to_json(*x.cond);
        } else if constexpr (std::is_same_v<T, ErrorStmt>) {
          j["node"] = "error";
        } else if constexpr (std::is_same_v<T, IfCondStmt>) {
          j["node"] = "if";
          j["cond"] = expr_to_json(*x.cond);
          j["then"] = block_to_json(x.then_block);
          j["else"] = block_to_json(x.else_block);
        } else if constexpr (std::is_same_v<T, IfNondetStmt>) {
          j["node"] = "if_nondet";
          j["then"] = block_to_json(x.then_block);
          j["else"] = block_to_json(x.else_block);
        } else {
          j["node"] = "while";
          j["cond"] = expr_to_json(*x.cond);
          j["body"] = block_to_json(x.body);
        }
        return j;
      },
      s.node);
  if (s.origin) j["origin"] = *s.origin;
  return j;
}

[[noreturn]] void bad(const std::string& what) {
  throw std::invalid_argument("AST JSON: " + what);
}

BinOp binop_from_name(const std::string& name) {
  static const std::pair<const char*, BinOp> table[] = {
      {"Add", BinOp::Add},       {"Sub", BinOp::Sub},
      {"Mul", BinOp::Mul},       {"Div", BinOp::Div},
      {"Mod", BinOp::Mod},       {"BitAnd", BinOp::BitAnd},
      {"BitOr", BinOp::BitOr},   {"BitXor", BinOp::BitXor},
      {"Shl", BinOp::Shl},       {"Shr", BinOp::Shr},
      {"Lt", BinOp::Lt},         {"Le", BinOp::Le},
      {"Gt", BinOp::Gt},         {"Ge", BinOp::Ge},
      {"Eq", BinOp::Eq},         {"Ne", BinOp::Ne},
      {"LogAnd", BinOp::LogAnd}, {"LogOr", BinOp::LogOr},
  };
  for (const auto& [n, op] : table) {
    if (name == n) return op;
  }
  bad("unknown binary operator '" + name + "'");
}

UnOp unop_from_name(const std::string& name) {
  if (name == "Neg") return UnOp::Neg;
  if (name == "LogNot") return UnOp::LogNot;
  if (name == "BitNot") return UnOp::BitNot;
  bad("unknown unary operator '" + name + "'");
}

ExprPtr expr_from(const json& j) {
  if (!j.is_object() || !j.contains("node")) bad("expected an object node");
  const std::string node = j.at("node").get<std::string>();
  if (node == "lit") {
    const std::string text = j.at("value").get<std::string>();
    return lit(std::stoll(text));
  }
  if (node == "bool") return boolean(j.at("value").get<bool>());
  if (node == "var") return var(j.at("name").get<std::string>());
  if (node == "width") return width();
  if (node == "unary") {
    return unary(unop_from_name(j.at("op").get<std::string>()),
                 expr_from(j.at("arg")));
  }
  if (node == "binary") {
    return binary(binop_from_name(j.at("op").get<std::string>()),
                  expr_from(j.at("lhs")), expr_from(j.at("rhs")));
  }
  if (node == "ite") {
    return ite(expr_from(j.at("cond")), expr_from(j.at("then")),
               expr_from(j.at("else")));
  }
  if (node == "opaque") return opaque(expr_from(j.at("inner")));
  bad("unknown expression node '" + node + "'");
}

StmtPtr stmt_from(const json& j);

Block block_from(const json& j) {
  if (!j.is_array()) bad("expected a statement array");
  Block b;
  for (const json& s : j) b.push_back(stmt_from(s));
  return b;
}

StmtPtr stmt_from(const json& j) {
  if (!j.is_object() || !j.contains("node")) bad("expected an object node");
  const std::string node = j.at("node").get<std::string>();
  std::optional<int> origin;
  if (j.contains("origin")) origin = j.at("origin").get<int>();
  if (node == "assign") {
    return assign(Ident{j.at("lhs").get<std::string>()},
                  expr_from(j.at("rhs")), origin);
  }
  if (node == "havoc") {
    return havoc(Ident{j.at("var").get<std::string>()}, origin);
  }
  if (node == "assume") return assume(expr_from(j.at("cond")), origin);
  if (node == "error") return error(origin);
  if (node == "if") {
    return if_cond(expr_from(j.at("cond")), block_from(j.at("then")),
                   block_from(j.at("else")), origin);
  }
  if (node == "if_nondet") {
    return if_nondet(block_from(j.at("then")), block_from(j.at("else")),
                     origin);
  }
  if (node == "while") {
    return while_loop(expr_from(j.at("cond")), block_from(j.at("body")),
                      origin);
  }
  bad("unknown statement node '" + node + "'");
}

}  // namespace

std::string to_json(const Program& p) {
  json j;
  j["node"] = "program";
  json decls = json::array();
  for (const Ident& d : p.decls) decls.push_back(d.name);
  j["decls"] = decls;
  j["body"] = block_to_json(p.body);
  return j.dump();
}

std::string to_json(const Expr& e) { return expr_to_json(e).dump(); }

Program program_from_json(std::string_view text) {
  const json j = json::parse(text);
  if (!j.is_object() || j.value("node", "") != "program") {
    bad("expected a program node");
  }
  Program p;
  for (const json& d : j.at("decls")) {
    p.decls.push_back(Ident{d.get<std::string>()});
  }
  p.body = block_from(j.at("body"));
  return p;
}

ExprPtr expr_from_json(std::string_view text) {
  return expr_from(json::parse(text));
}

}  // namespace bitbranch
