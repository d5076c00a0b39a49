#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "bitbranch/ast.hpp"
#include "bitbranch/ast_json.hpp"
#include "bitbranch/parse.hpp"
#include "bitbranch/print.hpp"
#include "bitbranch/progen.hpp"

using namespace bitbranch;

TEST_CASE("parse simple assignment program") {
  const Program p = parse_program("var x; var a; x := x & a;");
  REQUIRE(p.decls == std::vector<Ident>{{"x"}, {"a"}});
  REQUIRE(p.body.size() == 1);
  const auto& st = std::get<AssignStmt>(p.body[0]->node);
  CHECK(st.lhs == Ident{"x"});
  CHECK(equal(st.rhs, binary(BinOp::BitAnd, var("x"), var("a"))));
}

TEST_CASE("parse ite expression") {
  const Program p = parse_program("var s; s := ite(s >= 0, s % 2, s);");
  const auto& st = std::get<AssignStmt>(p.body[0]->node);
  const auto* node = std::get_if<IteExpr>(&st.rhs->node);
  REQUIRE(node != nullptr);
  CHECK(equal(*node->cond, *binary(BinOp::Ge, var("s"), lit(0))));
  CHECK(equal(*node->then_arm, *binary(BinOp::Mod, var("s"), lit(2))));
  CHECK(equal(*node->else_arm, *var("s")));
}

TEST_CASE("undeclared variable is an error") {
  CHECK_THROWS_AS(parse_program("var x; x := y;"), ParseError);
  CHECK_THROWS_AS(parse_program("y := 1;"), ParseError);
}

TEST_CASE("reserved words cannot be identifiers") {
  CHECK_THROWS_AS(parse_program("var while;"), ParseError);
  CHECK_THROWS_AS(parse_program("var ite; ite := 1;"), ParseError);
}

TEST_CASE("duplicate declaration is an error") {
  CHECK_THROWS_AS(parse_program("var x; var x;"), ParseError);
}

TEST_CASE("parse errors carry position") {
  try {
    parse_program("var x;\nx := ;\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line == 2);
    CHECK(e.column == 6);
  }
}

TEST_CASE("nondeterminism is statement-level only") {
  const Program p = parse_program("var x; x := *; if (*) { x := 1; }");
  CHECK(std::holds_alternative<HavocStmt>(p.body[0]->node));
  CHECK(std::holds_alternative<IfNondetStmt>(p.body[1]->node));
  CHECK_THROWS_AS(parse_program("var x; x := 1 + *;"), ParseError);
  CHECK_THROWS_AS(parse_program("var x; while (*) { x := 1; }"), ParseError);
}

TEST_CASE("operator precedence") {
  // unary > shifts > * / % > + - > & > ^ > | > relational > && > ||
  CHECK(equal(parse_expr("a << 1 * 2"),
              binary(BinOp::Mul, binary(BinOp::Shl, var("a"), lit(1)), lit(2))));
  CHECK(equal(parse_expr("a & b | c ^ d"),
              binary(BinOp::BitOr, binary(BinOp::BitAnd, var("a"), var("b")),
                     binary(BinOp::BitXor, var("c"), var("d")))));
  CHECK(equal(parse_expr("x + 1 & y"),
              binary(BinOp::BitAnd, binary(BinOp::Add, var("x"), lit(1)),
                     var("y"))));
  CHECK(equal(parse_expr("a < b && c < d || e"),
              binary(BinOp::LogOr,
                     binary(BinOp::LogAnd, binary(BinOp::Lt, var("a"), var("b")),
                            binary(BinOp::Lt, var("c"), var("d"))),
                     var("e"))));
  CHECK(equal(parse_expr("~x >> 1"),
              binary(BinOp::Shr, unary(UnOp::BitNot, var("x")), lit(1))));
}

TEST_CASE("pretty print parenthesization") {
  CHECK(pretty_print(binary(BinOp::BitAnd, var("s"),
                            binary(BinOp::Sub, lit(1), var("s")))) ==
        "s & (1 - s)");
  CHECK(pretty_print(parse_expr("(a + b) * c")) == "(a + b) * c");
  CHECK(pretty_print(parse_expr("a + b * c")) == "a + b * c");
  CHECK(pretty_print(parse_expr("-(a + b)")) == "-(a + b)");
  // arithmetic under relational/bitwise keeps its clarifying parens
  CHECK(pretty_print(parse_expr("1 - s == 1")) == "(1 - s) == 1");
  CHECK(pretty_print(parse_expr("x >> (WIDTH - 1)")) == "x >> (WIDTH - 1)");
  CHECK(pretty_print(parse_expr("a < b && c || d")) == "a < b && c || d");
}

TEST_CASE("ite chains print with parenthesized else") {
  const ExprPtr chain =
      ite(var("c1"), var("e1"), ite(var("c2"), var("e2"), var("e")));
  CHECK(pretty_print(chain) == "c1 ? e1 : (c2 ? e2 : e)");
}

TEST_CASE("opaque prints as @(...) and reparses") {
  const ExprPtr e = opaque(binary(BinOp::BitAnd, var("s"),
                                  binary(BinOp::Sub, lit(1), var("s"))));
  CHECK(pretty_print(e) == "@(s & (1 - s))");
  CHECK(equal(parse_expr(pretty_print(e)), e));
}

TEST_CASE("program round-trips through pretty printing") {
  const char* text =
      "var r; var s; var x;\n"
      "havoc x;\n"
      "while (x > 0) {\n"
      "  s := x >> (WIDTH - 1);\n"
      "  x := x - 1;\n"
      "  r := x + (s & (1 - s));\n"
      "  if (r < 0) {\n"
      "    error;\n"
      "  }\n"
      "}\n";
  const Program p = parse_program(text);
  const Program again = parse_program(pretty_print(p));
  CHECK(equal(p, again));
  CHECK(pretty_print(p) == pretty_print(again));
}

TEST_CASE("annotated printing round-trips (comments are skipped)") {
  const Program p = parse_program("var x; x := 1; if (x > 0) { havoc x; }");
  const std::string annotated = pretty_print(p, PrintOptions{true});
  CHECK(annotated.find("// #0") != std::string::npos);
  CHECK(equal(parse_program(annotated), p));
}

TEST_CASE("origins are preorder indices") {
  const Program p = parse_program(
      "var x; x := 1; while (x > 0) { x := x - 1; if (*) { error; } } havoc x;");
  CHECK(origin_tags(p) == std::vector<int>{0, 1, 2, 3, 4, 5});
  CHECK(p.body[0]->origin == 0);
  CHECK(p.body[1]->origin == 1);
  CHECK(p.body[2]->origin == 5);
}

TEST_CASE("free_vars") {
  CHECK(free_vars(*lit(5)).empty());
  CHECK(free_vars(*parse_expr("x & (1 - s)")) ==
        std::set<Ident>{{"x"}, {"s"}});
  CHECK(free_vars(*opaque(parse_expr("a | b"))) ==
        std::set<Ident>{{"a"}, {"b"}});
}

TEST_CASE("is_bitfree") {
  CHECK(is_bitfree(parse_expr("x + 1 <= a")));
  CHECK_FALSE(is_bitfree(parse_expr("x & a")));
  CHECK_FALSE(is_bitfree(parse_expr("ite(x >= 0, x % 2, x & 1)")));
  CHECK_FALSE(is_bitfree(opaque(parse_expr("x | y"))));
  CHECK_FALSE(is_bitfree(parse_expr("~x")));
}

TEST_CASE("well_formed catches undeclared uses") {
  Program p;
  p.decls = {Ident{"x"}};
  p.body = {assign(Ident{"x"}, var("y"))};
  std::string why;
  CHECK_FALSE(well_formed(p, &why));
  CHECK(why == "undeclared variable: y");
}

TEST_CASE("round-trip property on random expressions") {
  const std::vector<Ident> vars{{"a"}, {"b"}, {"c"}};
  for (std::uint64_t seed = 0; seed < 10000; ++seed) {
    const ExprPtr e = random_expr(seed, vars);
    const ExprPtr back = parse_expr(pretty_print(e));
    if (!equal(back, e)) {
      CAPTURE(seed);
      CAPTURE(pretty_print(e));
      REQUIRE(equal(back, e));
    }
  }
}

TEST_CASE("json form round-trips, integers as decimal strings") {
  const Program p = parse_program(
      "var x; var a;\n"
      "havoc a;\n"
      "x := a & 5;\n"
      "if (x == 0) { error; } else { x := ite(a > 0, a, 0 - a); }\n");
  const std::string j = to_json(p);
  CHECK(j.find("\"value\":\"5\"") != std::string::npos);
  const Program back = program_from_json(j);
  CHECK(equal(p, back));
  // origins survive the JSON form
  CHECK(origin_tags(back) == origin_tags(p));

  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const ExprPtr e = random_expr(seed + 77, {{"a"}, {"b"}});
    CHECK(equal(expr_from_json(to_json(*e)), e));
  }
}
