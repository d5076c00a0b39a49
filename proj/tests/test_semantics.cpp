#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "bitbranch/eval.hpp"
#include "bitbranch/parse.hpp"
#include "bitbranch/progen.hpp"
#include "bitbranch/reach.hpp"

using namespace bitbranch;

namespace {

std::int64_t eval_ok(const char* text, const State& sigma, int width) {
  const EvalResult r = eval_expr(*parse_expr(text), sigma, MachineConfig{width});
  REQUIRE_FALSE(r.is_fault());
  return r.value();
}

FaultKind eval_fault(const char* text, const State& sigma, int width) {
  const EvalResult r = eval_expr(*parse_expr(text), sigma, MachineConfig{width});
  REQUIRE(r.is_fault());
  return r.fault_kind();
}

}  // namespace

TEST_CASE("evaluation basics") {
  CHECK(eval_ok("5 & 3", {}, 8) == 1);
  CHECK(eval_ok("x >> (WIDTH - 1)", {{Ident{"x"}, -3}}, 4) == -1);
  CHECK(eval_ok("7 + 1", {}, 4) == -8);
  CHECK(eval_fault("x / y", {{Ident{"x"}, 1}, {Ident{"y"}, 0}}, 4) ==
        FaultKind::DivByZero);
}

TEST_CASE("division and modulo truncate toward zero") {
  CHECK(eval_ok("(0 - 7) / 2", {}, 8) == -3);
  CHECK(eval_ok("(0 - 7) % 2", {}, 8) == -1);
  CHECK(eval_ok("7 / (0 - 2)", {}, 8) == -3);
  CHECK(eval_ok("7 % (0 - 2)", {}, 8) == 1);
  CHECK(eval_fault("1 % 0", {}, 8) == FaultKind::DivByZero);
}

TEST_CASE("shift semantics") {
  CHECK(eval_ok("1 << (WIDTH - 1)", {}, 4) == -8);  // logical shift wraps
  CHECK(eval_ok("(0 - 8) >> 1", {}, 4) == -4);      // arithmetic shift
  CHECK(eval_ok("(0 - 1) >> 3", {}, 4) == -1);
  CHECK(eval_ok("6 >> 1", {}, 4) == 3);
  CHECK(eval_fault("1 << 4", {}, 4) == FaultKind::ShiftOutOfRange);
  CHECK(eval_fault("1 >> (0 - 1)", {}, 4) == FaultKind::ShiftOutOfRange);
  CHECK(eval_fault("1 >> WIDTH", {}, 8) == FaultKind::ShiftOutOfRange);
}

TEST_CASE("short-circuit evaluation masks faults") {
  CHECK(eval_ok("false && 1 / 0 > 0", {}, 4) == 0);
  CHECK(eval_ok("true || 1 / 0 > 0", {}, 4) == 1);
  CHECK(eval_fault("true && 1 / 0 > 0", {}, 4) == FaultKind::DivByZero);
  // ite evaluates exactly one arm
  CHECK(eval_ok("ite(1 < 2, 5, 1 / 0)", {}, 4) == 5);
}

TEST_CASE("WIDTH, literals and opaque") {
  CHECK(eval_ok("WIDTH", {}, 6) == 6);
  CHECK(eval_ok("WIDTH - 1", {}, 2) == 1);  // wraps consistently mod 2^w
  CHECK(eval_ok("100", {}, 4) == 4);        // literals wrap into the domain
  CHECK(eval_ok("@(5 & 3)", {}, 8) == 1);
  CHECK(eval_ok("true", {}, 4) == 1);
  CHECK(eval_ok("!3", {}, 4) == 0);
  CHECK(eval_ok("~5", {}, 4) == -6);
}

TEST_CASE("unbound variable is a caller error") {
  CHECK_THROWS_AS(eval_expr(*parse_expr("x + 1"), State{}, MachineConfig{4}),
                  std::invalid_argument);
}

TEST_CASE("two's-complement identities, exhaustive over widths 2..8") {
  for (int w = 2; w <= 8; ++w) {
    const MachineConfig cfg{w};
    for (std::int64_t x = cfg.min_value(); x <= cfg.max_value(); ++x) {
      const State sigma{{Ident{"x"}, x}};
      CHECK(eval_ok("x & x", sigma, w) == x);
      CHECK(eval_ok("x ^ x", sigma, w) == 0);
      CHECK(eval_ok("~x", sigma, w) == cfg.wrap(-x - 1));
      const std::int64_t sign = eval_ok("x >> (WIDTH - 1)", sigma, w);
      CHECK(sign == (x >= 0 ? 0 : -1));
    }
  }
}

TEST_CASE("exec_stmt") {
  const MachineConfig cfg{4};

  SUBCASE("blocked assume yields no successors") {
    const Program p = parse_program("var x; assume(x > 0);");
    const StepResult r = exec_stmt(*p.body[0], {{Ident{"x"}, 0}}, cfg);
    CHECK(r.states.empty());
    CHECK_FALSE(r.error);
  }

  SUBCASE("havoc enumerates the whole domain") {
    const MachineConfig w2{2};
    const StepResult r = exec_stmt(*havoc(Ident{"x"}), {{Ident{"x"}, 0}}, w2);
    REQUIRE(r.states.size() == 4);
    std::set<std::int64_t> values;
    for (const State& s : r.states) values.insert(s.at(Ident{"x"}));
    CHECK(values == std::set<std::int64_t>{-2, -1, 0, 1});
  }

  SUBCASE("if-nondet explores only feasible branches") {
    const Program p = parse_program(
        "var b; if (*) { assume(b); error; } else { assume(!b); }");
    const StepResult r = exec_stmt(*p.body[0], {{Ident{"b"}, 1}}, cfg);
    CHECK(r.error);
    CHECK(r.states.empty());  // then-branch errors, else-branch is blocked
  }

  SUBCASE("assignment updates one binding") {
    const Program p = parse_program("var x; var y; x := y + 1;");
    const StepResult r =
        exec_stmt(*p.body[0], {{Ident{"x"}, 0}, {Ident{"y"}, 3}}, cfg);
    REQUIRE(r.states.size() == 1);
    CHECK(r.states[0].at(Ident{"x"}) == 4);
    CHECK(r.states[0].at(Ident{"y"}) == 3);
  }

  SUBCASE("while unrolls under the step budget") {
    const Program p =
        parse_program("var x; x := 3; while (x > 0) { x := x - 1; }");
    const StepResult r = exec_stmt(*p.body[1], {{Ident{"x"}, 3}}, cfg);
    REQUIRE(r.states.size() == 1);
    CHECK(r.states[0].at(Ident{"x"}) == 0);
  }

  SUBCASE("faults propagate") {
    const Program p = parse_program("var x; x := x / 0;");
    const StepResult r = exec_stmt(*p.body[0], {{Ident{"x"}, 1}}, cfg);
    CHECK(r.states.empty());
    REQUIRE(r.faults.size() == 1);
    CHECK(r.faults[0].kind == FaultKind::DivByZero);
  }
}

TEST_CASE("reachable basics") {
  const MachineConfig cfg{4};

  SUBCASE("assume(false) blocks the error") {
    const ReachResult r =
        reachable(parse_program("var x; assume(false); error;"), cfg, 100);
    CHECK_FALSE(r.error_reached);
    CHECK_FALSE(r.exhausted);
  }

  SUBCASE("havocked guard reaches the error") {
    const ReachResult r = reachable(
        parse_program("var x; havoc x; if (x > 0) { error; } else { }"), cfg,
        100);
    CHECK(r.error_reached);
  }

  SUBCASE("all-zeros initial state") {
    const ReachResult r = reachable(
        parse_program("var x; var y; if (x == 0 && y == 0) { error; }"), cfg,
        100);
    CHECK(r.error_reached);
  }

  SUBCASE("infinite loops reach a fixpoint over finite states") {
    const ReachResult r = reachable(
        parse_program("var x; while (true) { x := x + 1; }"), cfg, 1000);
    CHECK_FALSE(r.exhausted);  // 16 states, then the visited set closes
    CHECK_FALSE(r.error_reached);
  }

  SUBCASE("step bound exhausts and reports it") {
    const ReachResult r = reachable(
        parse_program("var x; while (true) { x := x + 1; }"), cfg, 5);
    CHECK(r.exhausted);
  }
}

TEST_CASE("observations are per-origin projected states") {
  const Program p = parse_program("var x; x := 1; x := x + 1;");
  const ReachResult r = reachable(p, MachineConfig{4}, 100);
  REQUIRE(r.projected_vars == std::vector<Ident>{{"x"}});
  CHECK(r.observed.count(Observation{0, {1}}) == 1);
  CHECK(r.observed.count(Observation{1, {2}}) == 1);
  CHECK(r.observed.size() == 2);
}

TEST_CASE("projection keeps only the requested variables") {
  const Program p = parse_program("var x; var t; t := 3; x := t;");
  const ReachResult r =
      reachable(p, MachineConfig{4}, 100, std::vector<Ident>{{"x"}});
  CHECK(r.observed.count(Observation{0, {0}}) == 1);  // after t := 3
  CHECK(r.observed.count(Observation{1, {3}}) == 1);  // after x := t
}

TEST_CASE("reachable is monotone in the step bound") {
  const MachineConfig cfg{4};
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const Program p = random_program(seed, cfg);
    const ReachResult small = reachable(p, cfg, 50);
    const ReachResult big = reachable(p, cfg, 5000);
    for (const Observation& obs : small.observed) {
      CHECK(big.observed.count(obs) == 1);
    }
  }
}

TEST_CASE("fixpoint runs are reproducible at larger bounds") {
  const MachineConfig cfg{4};
  int compared = 0;
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const Program p = random_program(seed, cfg);
    const ReachResult r1 = reachable(p, cfg, 20000);
    if (r1.exhausted) continue;
    const ReachResult r2 = reachable(p, cfg, 200000);
    ++compared;
    CHECK(r1.observed == r2.observed);
    CHECK(r1.error_reached == r2.error_reached);
    CHECK(r1.faults == r2.faults);
    CHECK_FALSE(r2.exhausted);
  }
  CHECK(compared > 10);
}

TEST_CASE("faults are collected, not thrown") {
  const ReachResult r = reachable(
      parse_program("var x; havoc x; x := 1 / x; error;"), MachineConfig{4},
      1000);
  CHECK(r.error_reached);  // every nonzero x still reaches the error
  REQUIRE(r.faults.size() == 1);
  CHECK(r.faults.begin()->kind == FaultKind::DivByZero);
  CHECK(r.faults.begin()->origin == 1);
}

TEST_CASE("reach result JSON schema") {
  const ReachResult r =
      reachable(parse_program("var x; x := 1;"), MachineConfig{4}, 10);
  CHECK(to_json(r) ==
        R"({"error_reached":false,"exhausted":false,"fault_count":0,"observed_count":1})");
}
