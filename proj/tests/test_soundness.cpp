#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "bitbranch/parse.hpp"
#include "bitbranch/progen.hpp"
#include "bitbranch/soundness.hpp"

using namespace bitbranch;

namespace {

const char* kExample2 =
    "var a; var x;\n"
    "havoc x;\n"
    "havoc a;\n"
    "assume(a > 0);\n"
    "while (x > 0) {\n"
    "  a := a - 1;\n"
    "  x := x & a;\n"
    "}\n";

const char* kExample1 =
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

}  // namespace

TEST_CASE("inclusion holds trivially for bitfree programs") {
  const Program p = parse_program(
      "var x; havoc x; while (x > 0) { x := x - 1; }");
  const InclusionVerdict v =
      check_inclusion(p, {}, MachineConfig{4}, 100000);
  CHECK(v.status == InclusionStatus::Holds);
  CHECK(v.observed_p == v.observed_t);
  CHECK_FALSE(v.witness.has_value());
}

TEST_CASE("inclusion holds on the termination example") {
  const Program p = parse_program(kExample2);
  const InclusionVerdict v =
      check_inclusion(p, {}, MachineConfig{4}, 100000);
  CHECK(v.status == InclusionStatus::Holds);
  CHECK(v.observed_t >= v.observed_p);  // over-approximation adds states
}

TEST_CASE("an unsound mutant rule is caught with a concrete witness") {
  // R-And-1 with its condition dropped claims a & b == a unconditionally.
  std::vector<Rule> catalog = rule_catalog();
  catalog[static_cast<std::size_t>(rule_index(catalog, "R-And-1"))].condition =
      boolean(true);
  TransformOptions opts;
  opts.enabled_rules = std::set<std::string>{"R-And-1"};

  const Program p = parse_program(
      "var x; var a; var b; havoc a; havoc b; x := a & b;");
  const InclusionVerdict v =
      check_inclusion(p, opts, MachineConfig{4}, 100000, catalog);
  CHECK(v.status == InclusionStatus::Fails);
  REQUIRE(v.witness.has_value());

  // replay the witness: observed in P, not in the mutant T(P)
  const Program tp = transform_program(p, opts, catalog);
  const ReachResult rp = reachable(p, MachineConfig{4}, 100000);
  const ReachResult rt = reachable(tp, MachineConfig{4}, 100000, p.decls);
  CHECK(rp.observed.count(*v.witness) == 1);
  CHECK(rt.observed.count(*v.witness) == 0);
  CHECK_FALSE(rt.exhausted);
}

TEST_CASE("a negated weakening constraint is caught") {
  std::vector<Rule> catalog = rule_catalog();
  Rule& rule =
      catalog[static_cast<std::size_t>(rule_index(catalog, "W-And-Pos"))];
  rule.replacement = unary(UnOp::LogNot, rule.replacement);
  TransformOptions opts;
  opts.enabled_rules = std::set<std::string>{"W-And-Pos"};

  // The statement after the weakened site observes post-constraint states,
  // where the mutant excludes the value P actually computes.
  const Program p = parse_program(
      "var x; var a; var y; havoc x; havoc a; assume(x >= 0); "
      "assume(a >= 0); x := x & a; y := x;");
  const InclusionVerdict v =
      check_inclusion(p, opts, MachineConfig{4}, 100000, catalog);
  CHECK(v.status == InclusionStatus::Fails);
  CHECK(v.witness.has_value());
}

TEST_CASE("certify_safety") {
  SUBCASE("the reachability example is safe at width 8") {
    const Program p = parse_program(kExample1);
    const SafetyReport r =
        certify_safety(p, {}, MachineConfig{8}, 1000000);
    CHECK(r.classification == SafetyClass::Safe);
    CHECK(r.message ==
          "P safe at width 8 (certified via over-approximation)");
  }

  SUBCASE("true alarms are confirmed against P") {
    const Program p = parse_program(
        "var x; havoc x; if (x > 0) { error; } else { }");
    const SafetyReport r = certify_safety(p, {}, MachineConfig{4}, 10000);
    CHECK(r.classification == SafetyClass::TrueAlarm);
    CHECK(r.error_p);
    CHECK(r.error_t);
  }

  SUBCASE("havoc-weakened assignments can raise spurious alarms") {
    // x & a can only produce 2 here, but the weakening admits any value
    // up to the operand minimum, so the guard r == 1 opens in T(P) only.
    const Program p = parse_program(
        "var x; var a; var r;\n"
        "x := 2;\n"
        "a := 3;\n"
        "r := x & a;\n"
        "if (r == 1) {\n"
        "  error;\n"
        "}\n");
    const SafetyReport r = certify_safety(p, {}, MachineConfig{4}, 100000);
    CHECK(r.classification == SafetyClass::SpuriousAlarm);
    CHECK(r.error_t);
    CHECK_FALSE(r.error_p);
  }
}

TEST_CASE("bound-exhausted runs are inconclusive, never holds") {
  const Program p = parse_program(kExample2);
  const InclusionVerdict v = check_inclusion(p, {}, MachineConfig{4}, 3);
  CHECK(v.status == InclusionStatus::Inconclusive);
  CHECK_FALSE(v.holds());

  const SafetyReport r = certify_safety(p, {}, MachineConfig{4}, 3);
  CHECK(r.classification == SafetyClass::Inconclusive);
}

TEST_CASE("fuzzed inclusion and error monotonicity") {
  const FuzzResult r = fuzz_inclusion(20250808, 150, MachineConfig{4}, 10000);
  CHECK(r.checked == 150);
  CHECK(r.failures.empty());
  CHECK(r.holds + r.inconclusive == r.checked);
  CHECK(r.holds > r.checked / 2);  // the corpus is mostly conclusive
  CHECK(r.error_monotonicity_checked > 0);
}

TEST_CASE("error monotonicity on conclusive fuzz runs") {
  const MachineConfig cfg{4};
  int checked = 0;
  for (std::uint64_t seed = 500; seed < 560; ++seed) {
    const Program p = random_program(seed, cfg);
    const InclusionVerdict v = check_inclusion(p, {}, cfg, 10000);
    if (v.exhausted_t) continue;
    ++checked;
    if (v.error_p) CHECK(v.error_t);
  }
  CHECK(checked > 30);
}

TEST_CASE("verdict JSON carries the witness state") {
  std::vector<Rule> catalog = rule_catalog();
  catalog[static_cast<std::size_t>(rule_index(catalog, "R-And-1"))].condition =
      boolean(true);
  TransformOptions opts;
  opts.enabled_rules = std::set<std::string>{"R-And-1"};
  const Program p = parse_program(
      "var x; var a; var b; havoc a; havoc b; x := a & b;");
  const InclusionVerdict v =
      check_inclusion(p, opts, MachineConfig{4}, 100000, catalog);
  const std::string j = to_json(v);
  CHECK(j.find("\"status\":\"fails\"") != std::string::npos);
  CHECK(j.find("\"witness\":{\"origin\":") != std::string::npos);

  const Program safe = parse_program("var x; x := 1;");
  const std::string holds_json =
      to_json(check_inclusion(safe, {}, MachineConfig{4}, 1000));
  CHECK(holds_json.find("\"status\":\"holds\"") != std::string::npos);
  CHECK(holds_json.find("\"witness\":null") != std::string::npos);
}
