// Acceptance suite: one line per criterion, exit 0 iff all pass.
//
// Usage: acceptance [path-to-bitbranch-cli]
// The fixture corpus location is baked in at configure time.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "bitbranch/cfa.hpp"
#include "bitbranch/parse.hpp"
#include "bitbranch/print.hpp"
#include "bitbranch/progen.hpp"
#include "bitbranch/reach.hpp"
#include "bitbranch/rule_check.hpp"
#include "bitbranch/soundness.hpp"
#include "bitbranch/transform.hpp"

using namespace bitbranch;
namespace fs = std::filesystem;

namespace {

std::string g_cli_path;

struct CliResult {
  int exit_code = -1;
  std::string output;
};

CliResult run_cli(const std::string& args) {
  CliResult res;
  if (g_cli_path.empty()) return res;
  const std::string cmd = g_cli_path + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return res;
  char buf[4096];
  while (std::size_t n = fread(buf, 1, sizeof buf, pipe)) {
    res.output.append(buf, n);
  }
  const int status = pclose(pipe);
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

std::string squeeze(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c != ' ' && c != '\t' && c != '\n' && c != '@') out += c;
  }
  return out;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<fs::path> fixture_corpus() {
  std::vector<fs::path> out;
  for (const auto& entry :
       fs::recursive_directory_iterator(BITBRANCH_FIXTURE_DIR)) {
    if (entry.is_regular_file() && entry.path().extension() == ".bb") {
      out.push_back(entry.path());
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

TransformOptions only(std::initializer_list<std::string> ids) {
  TransformOptions opts;
  opts.enabled_rules = std::set<std::string>(ids);
  return opts;
}

struct Check {
  bool ok = true;
  std::string detail;

  void expect(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

// --- criterion 1: exhaustive rule suite -----------------------------------

void criterion_rule_suite(Check& c) {
  int verdicts = 0;
  for (const Rule& r : rule_catalog()) {
    for (int w : {4, 6}) {
      const RuleVerdict v = check_rule_correctness(r, MachineConfig{w});
      ++verdicts;
      c.expect(v.pass, r.id + " failed at width " + std::to_string(w) +
                           (v.counterexample
                                ? ": " + v.counterexample->to_string()
                                : ""));
    }
    if (r.kind == RuleKind::Rewrite) {
      const RuleVerdict v = check_rule_correctness(r, MachineConfig{8});
      ++verdicts;
      c.expect(v.pass, r.id + " failed at width 8");
    }
  }
  c.expect(verdicts == 34 * 2 + 17, "unexpected verdict count");
  if (c.ok) c.detail = "85 verdicts over 34 catalog entries";
}

// --- criterion 2: the worked single-rule example ---------------------------

void criterion_worked_example(Check& c) {
  const char* quoted = "s>=0 && (1-s)==1 ? s%2 : (s&(1-s))";
  const ExprPtr emitted =
      transform_expr(parse_expr("s & (1 - s)"), only({"R-And-LBS"}));
  c.expect(squeeze(pretty_print(emitted)) == squeeze(quoted),
           "emitted '" + pretty_print(emitted) + "'");
  c.expect(equal(strip_opaque(emitted), parse_expr(quoted)),
           "structural mismatch against the quoted approximation");

  const std::string fixture =
      (fs::path(BITBRANCH_FIXTURE_DIR) / "ex1.bb").string();
  const CliResult cli =
      run_cli("transform --rules R-And-LBS " + fixture);
  c.expect(cli.exit_code == 0, "transform CLI exited nonzero");
  c.expect(cli.output.find(
               "s >= 0 && (1 - s) == 1 ? s % 2 : @(s & (1 - s))") !=
               std::string::npos,
           "CLI output lacks the conditional approximation");
  if (c.ok) c.detail = "library and CLI agree with the quoted form";
}

// --- criterion 3: termination example, gray box and inclusion --------------

void criterion_termination_example(Check& c) {
  const Program p =
      parse_program(read_file(fs::path(BITBRANCH_FIXTURE_DIR) / "ex2.bb"));
  const Program t = transform_program(p, only({"W-And-Pos"}));

  const auto* loop = std::get_if<WhileStmt>(&t.body[3]->node);
  c.expect(loop != nullptr, "loop missing after transformation");
  if (loop) {
    const auto* guard = std::get_if<IfCondStmt>(&loop->body.back()->node);
    c.expect(guard != nullptr, "guarded chain missing");
    if (guard) {
      c.expect(pretty_print(guard->cond).find(">= 0 &&") != std::string::npos,
               "guard is not the nonnegativity conjunction");
      c.expect(guard->then_block.size() == 2 &&
                   std::holds_alternative<HavocStmt>(
                       guard->then_block[0]->node) &&
                   std::holds_alternative<AssumeStmt>(
                       guard->then_block[1]->node),
               "havoc plus assume missing");
      if (guard->then_block.size() == 2) {
        const auto& constraint =
            std::get<AssumeStmt>(guard->then_block[1]->node);
        c.expect(is_bitfree(constraint.cond), "constraint is not linear");
      }
      c.expect(guard->else_block.size() == 1 &&
                   std::holds_alternative<AssignStmt>(
                       guard->else_block[0]->node),
               "bitvector else missing");
      if (guard->else_block.size() == 1) {
        const auto& fallback =
            std::get<AssignStmt>(guard->else_block[0]->node);
        c.expect(!is_bitfree(fallback.rhs),
                 "else branch lost the bitvector operation");
      }
    }
  }

  const InclusionVerdict v =
      check_inclusion(p, only({"W-And-Pos"}), MachineConfig{4}, 100000);
  c.expect(v.status == InclusionStatus::Holds,
           std::string("inclusion ") + std::string(to_string(v.status)));
  const InclusionVerdict v_all =
      check_inclusion(p, {}, MachineConfig{4}, 100000);
  c.expect(v_all.status == InclusionStatus::Holds,
           "inclusion with the full catalog did not hold");
  if (c.ok) {
    c.detail = "gray-box shape; inclusion holds (" +
               std::to_string(v_all.observed_p) + " vs " +
               std::to_string(v_all.observed_t) + " observations)";
  }
}

// --- criterion 4: reachability example is safe at width 8 ------------------

void criterion_reachability_example(Check& c) {
  const Program p =
      parse_program(read_file(fs::path(BITBRANCH_FIXTURE_DIR) / "ex1.bb"));
  const MachineConfig cfg{8};
  const ReachResult rp = reachable(p, cfg, 1000000);
  c.expect(!rp.error_reached && !rp.exhausted, "P is not proven safe");

  const Program t = transform_program(p);
  const ReachResult rt = reachable(t, cfg, 1000000, p.decls);
  c.expect(!rt.error_reached && !rt.exhausted, "T(P) is not proven safe");

  const SafetyReport report = certify_safety(p, {}, cfg, 1000000);
  c.expect(report.classification == SafetyClass::Safe,
           "certification is not 'safe'");
  c.expect(report.message ==
               "P safe at width 8 (certified via over-approximation)",
           "unexpected certification message: " + report.message);
  if (c.ok) {
    c.detail = "error unreachable in P and T(P); " + report.message;
  }
}

// --- criterion 5: fuzzed soundness ------------------------------------------

void criterion_fuzz(Check& c) {
  const FuzzResult r = fuzz_inclusion(42, 500, MachineConfig{4}, 10000);
  c.expect(r.checked == 500, "wrong corpus size");
  for (const FuzzFailure& f : r.failures) {
    c.expect(false, f.kind + " failure at seed " +
                        std::to_string(f.program_seed));
  }
  if (c.ok) {
    c.detail = std::to_string(r.holds) + " holds, " +
               std::to_string(r.inconclusive) + " inconclusive, 0 failures";
  }
}

// --- criterion 6: mutation sensitivity --------------------------------------

void criterion_mutations(Check& c) {
  const auto& base = rule_catalog();
  struct Mutation {
    std::string rule;
    std::function<void(Rule&)> apply;
    std::string fixture;
  };
  const std::vector<Mutation> mutations = {
      {"R-And-1", [](Rule& r) { r.condition = boolean(true); },
       "mutation/and1_condition_dropped.bb"},
      {"R-Or-1", [](Rule& r) { r.replacement = lit(0); },
       "mutation/or1_replacement_zero.bb"},
      {"W-And-Pos",
       [](Rule& r) { r.replacement = unary(UnOp::LogNot, r.replacement); },
       "mutation/wandpos_constraint_negated.bb"},
  };

  for (const Mutation& m : mutations) {
    std::vector<Rule> catalog = base;
    m.apply(catalog[static_cast<std::size_t>(rule_index(catalog, m.rule))]);

    // the rule suite (criterion 1) rejects the mutant outright
    const RuleVerdict v = check_rule_correctness(
        catalog[static_cast<std::size_t>(rule_index(catalog, m.rule))],
        MachineConfig{4});
    c.expect(!v.pass, m.rule + " mutant passed the rule suite");
    c.expect(v.counterexample.has_value(),
             m.rule + " mutant failed without a counterexample");

    // and the inclusion fuzz (criterion 5) finds a program-level witness
    const Program p = parse_program(
        read_file(fs::path(BITBRANCH_FIXTURE_DIR) / m.fixture));
    const InclusionVerdict inc = check_inclusion(
        p, only({m.rule}), MachineConfig{4}, 100000, catalog);
    c.expect(inc.status == InclusionStatus::Fails,
             m.rule + " mutant not caught by inclusion");
    c.expect(inc.witness.has_value(), m.rule + " inclusion had no witness");
  }
  if (c.ok) {
    c.detail = "3 documented mutants rejected, each with a counterexample";
  }
}

// --- criterion 7: the weakening diamond in CFA view --------------------------

void criterion_cfa_figure(Check& c) {
  const Program p = parse_program("var x; var a; x := x & a;");

  const Cfa top = build_cfa(p);
  c.expect(top.location_count == 2 && top.edges.size() == 1,
           "original automaton is not a single edge");
  c.expect(print_stmt_inline(*top.edges[0].stmt) == "x := x & a;",
           "top edge label mismatch");

  const Program t =
      branch_normalize(transform_program(p, only({"W-And-Pos"})));
  const Cfa bottom = build_cfa(t);

  std::map<std::string, std::string> temp_defs;
  std::vector<std::string> labels;
  for (const CfaEdge& e : bottom.edges) {
    if (const auto* a = std::get_if<AssignStmt>(&e.stmt->node)) {
      if (a->lhs.name.rfind("_bb", 0) == 0 &&
          std::holds_alternative<VarExpr>(a->rhs->node)) {
        temp_defs[a->lhs.name] = std::get<VarExpr>(a->rhs->node).name.name;
        continue;  // operand-capture edges resolve away
      }
    }
    labels.push_back(print_stmt_inline(*e.stmt));
  }
  for (std::string& l : labels) {
    for (const auto& [temp, value] : temp_defs) {
      for (std::size_t at = l.find(temp); at != std::string::npos;
           at = l.find(temp, at)) {
        l.replace(at, temp.size(), value);
        at += value.size();
      }
    }
  }
  std::sort(labels.begin(), labels.end());
  const std::vector<std::string> expected = {
      "assume(!(x >= 0 && a >= 0));", "assume(x <= x && x <= a);",
      "assume(x >= 0 && a >= 0);", "havoc x;", "x := @(x & a);"};
  c.expect(labels == expected, "transformed automaton edge multiset mismatch");

  // the diamond: positive and negated guard, the linear assume with the
  // x <= a conjunct, the bitvector else
  c.expect(std::count(labels.begin(), labels.end(),
                      "assume(x >= 0 && a >= 0);") == 1,
           "guard edge missing");
  c.expect(labels[1].find("x <= a") != std::string::npos,
           "linear constraint edge missing");
  c.expect(std::count(labels.begin(), labels.end(), "x := @(x & a);") == 1,
           "bitvector else edge missing");

  // the CLI emits both automata as DOT
  const std::string fixture_dir = BITBRANCH_FIXTURE_DIR;
  const CliResult before =
      run_cli("cfa " + fixture_dir + "/rules/W-And-Pos.bb");
  const CliResult after = run_cli("cfa --transformed --rules W-And-Pos " +
                                  fixture_dir + "/rules/W-And-Pos.bb");
  c.expect(before.exit_code == 0 && after.exit_code == 0,
           "cfa CLI exited nonzero");
  c.expect(before.output.find("digraph cfa {") == 0 &&
               after.output.find("digraph cfa {") == 0,
           "cfa CLI did not emit DOT");
  c.expect(after.output.find("havoc") != std::string::npos,
           "transformed DOT lacks the weakened path");
  if (c.ok) c.detail = "edge multisets match the two automata";
}

// --- criterion 8: round-trip and idempotence --------------------------------

void criterion_roundtrip(Check& c) {
  int corpus = 0;
  for (const fs::path& path : fixture_corpus()) {
    ++corpus;
    Program p;
    try {
      p = parse_program(read_file(path));
    } catch (const std::exception& e) {
      c.expect(false, path.filename().string() + ": " + e.what());
      continue;
    }
    c.expect(equal(parse_program(pretty_print(p)), p),
             path.filename().string() + ": print/parse round-trip");
    const Program t = transform_program(p);
    std::string why;
    c.expect(well_formed(t, &why),
             path.filename().string() + ": transformed program " + why);
    c.expect(equal(parse_program(pretty_print(t)), t),
             path.filename().string() + ": transformed round-trip");
    c.expect(equal(transform_program(t), t),
             path.filename().string() + ": transform not idempotent");
  }
  c.expect(corpus >= 41, "fixture corpus is incomplete");

  const std::vector<Ident> vars{{"a"}, {"b"}, {"c"}};
  for (std::uint64_t seed = 0; seed < 10000; ++seed) {
    const ExprPtr e = random_expr(seed, vars);
    if (!equal(parse_expr(pretty_print(e)), e)) {
      c.expect(false, "expression round-trip at seed " + std::to_string(seed));
      break;
    }
    const ExprPtr once = transform_expr(e);
    if (!equal(transform_expr(once), once)) {
      c.expect(false, "expression idempotence at seed " + std::to_string(seed));
      break;
    }
  }
  if (c.ok) {
    c.detail = std::to_string(corpus) +
               " fixtures and 10000 random expressions";
  }
}

}  // namespace

int main(int argc, char** argv) {
  if (argc > 1) g_cli_path = argv[1];

  struct Entry {
    int number;
    const char* name;
    void (*run)(Check&);
    double budget_seconds;
  };
  const Entry entries[] = {
      {1, "rule suite, exhaustive at widths 4/6 (rewrites also 8)",
       criterion_rule_suite, 60.0},
      {2, "worked example: single-rule conditional approximation",
       criterion_worked_example, 60.0},
      {3, "termination example: gray box and inclusion at width 4",
       criterion_termination_example, 30.0},
      {4, "reachability example: safe at width 8", criterion_reachability_example,
       300.0},
      {5, "fuzz soundness: 500 programs at width 4", criterion_fuzz, 600.0},
      {6, "mutation sensitivity: three documented mutants",
       criterion_mutations, 60.0},
      {7, "CFA view of a weakening application", criterion_cfa_figure, 60.0},
      {8, "round-trip and idempotence over the corpus", criterion_roundtrip,
       120.0},
  };

  bool all_ok = true;
  for (const Entry& entry : entries) {
    Check c;
    const auto start = std::chrono::steady_clock::now();
    try {
      entry.run(c);
    } catch (const std::exception& e) {
      c.ok = false;
      c.detail = std::string("exception: ") + e.what();
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    if (seconds > entry.budget_seconds) {
      c.ok = false;
      c.detail = "over time budget";
    }
    char line[512];
    std::snprintf(line, sizeof line, "criterion %d: %-55s %s (%.2fs)%s%s",
                  entry.number, entry.name, c.ok ? "PASS" : "FAIL", seconds,
                  c.detail.empty() ? "" : " -- ", c.detail.c_str());
    std::cout << line << "\n";
    all_ok = all_ok && c.ok;
  }
  std::cout << (all_ok ? "acceptance: PASS" : "acceptance: FAIL") << "\n";
  return all_ok ? 0 : 1;
}
