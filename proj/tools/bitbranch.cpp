// bitbranch: bitwise-branching transformer and small-width checking tools.
//
// Subcommands: transform, check-rules, reach, soundness, cfa. Exit codes:
// 0 success/pass, 1 check failure, 2 usage or parse error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "bitbranch/ast_json.hpp"
#include "bitbranch/cfa.hpp"
#include "bitbranch/parse.hpp"
#include "bitbranch/print.hpp"
#include "bitbranch/reach.hpp"
#include "bitbranch/rule_check.hpp"
#include "bitbranch/soundness.hpp"
#include "bitbranch/transform.hpp"

namespace {

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::set<std::string> parse_rule_list(const std::string& csv) {
  std::set<std::string> out;
  std::string item;
  std::istringstream ss(csv);
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.insert(item);
  }
  return out;
}

bitbranch::TransformOptions make_options(const std::string& rules_csv,
                                         int max_nesting) {
  bitbranch::TransformOptions opts;
  if (!rules_csv.empty()) {
    auto ids = parse_rule_list(rules_csv);
    for (const std::string& id : ids) {
      if (!bitbranch::find_rule(bitbranch::rule_catalog(), id)) {
        throw CLI::ValidationError("--rules", "unknown rule id '" + id + "'");
      }
    }
    opts.enabled_rules = std::move(ids);
  }
  if (max_nesting >= 0) opts.max_nesting = max_nesting;
  return opts;
}

int run_check_rules(int width) {
  using namespace bitbranch;
  bool all_pass = true;
  auto emit = [&](const RuleVerdict& v) {
    std::string line = v.rule_id + "\t" + std::to_string(v.width) + "\t" +
                       (v.pass ? "PASS" : "FAIL");
    if (!v.pass && v.counterexample) {
      line += "\t" + v.counterexample->to_string();
    }
    std::cout << line << "\n";
    all_pass = all_pass && v.pass;
  };
  for (const Rule& r : rule_catalog()) {
    if (width > 0) {
      emit(check_rule_correctness(r, MachineConfig{width}));
      continue;
    }
    // Default suite: every rule at widths 4 and 6, rewrites also at 8.
    emit(check_rule_correctness(r, MachineConfig{4}));
    emit(check_rule_correctness(r, MachineConfig{6}));
    if (r.kind == RuleKind::Rewrite) {
      emit(check_rule_correctness(r, MachineConfig{8}));
    }
  }
  return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bitwise branching transformer and small-width checker"};
  app.require_subcommand(1);

  std::string input;
  std::string rules_csv;
  int max_nesting = -1;
  std::string emit_mode = "text";
  std::string cfa_dot_path;
  bool annotate = false;
  int width = 4;
  std::size_t bound = 100000;
  std::uint64_t seed = 1;
  int count = 0;
  bool certify = false;
  bool fuzz = false;
  bool transformed = false;

  auto* cmd_transform =
      app.add_subcommand("transform", "apply bitwise branching to a program");
  cmd_transform->add_option("input", input, "program file or '-'")->required();
  cmd_transform->add_option("--rules", rules_csv, "comma-separated rule ids");
  cmd_transform->add_option("--max-nesting", max_nesting,
                            "cap rule instances per site");
  cmd_transform->add_option("--emit", emit_mode, "text|json")
      ->check(CLI::IsMember({"text", "json"}));
  cmd_transform->add_option("--cfa-dot", cfa_dot_path,
                            "write the transformed program's CFA as DOT");
  cmd_transform->add_flag("--annotate", annotate,
                          "print origin tags as comments");

  auto* cmd_rules =
      app.add_subcommand("check-rules", "exhaustive rule correctness suite");
  int rules_width = 0;
  cmd_rules->add_option("--width", rules_width,
                        "check all rules at one width (default: full suite)")
      ->check(CLI::Range(2, 8));

  auto* cmd_reach =
      app.add_subcommand("reach", "explicit-state reachability, JSON result");
  cmd_reach->add_option("input", input, "program file or '-'")->required();
  cmd_reach->add_option("--width", width, "bit width")->check(CLI::Range(2, 16));
  cmd_reach->add_option("--bound", bound, "step bound");

  auto* cmd_sound = app.add_subcommand(
      "soundness", "inclusion check, safety certification, or fuzzing");
  cmd_sound->add_option("input", input, "program file or '-'");
  cmd_sound->add_option("--width", width, "bit width")->check(CLI::Range(2, 16));
  cmd_sound->add_option("--bound", bound, "step bound");
  cmd_sound->add_option("--seed", seed, "fuzz seed");
  cmd_sound->add_option("--count", count, "number of fuzzed programs");
  cmd_sound->add_flag("--certify", certify,
                      "classify safety of the input program");
  cmd_sound->add_flag("--fuzz", fuzz, "run the random-program fuzz suite");

  auto* cmd_cfa = app.add_subcommand("cfa", "emit a control-flow automaton");
  cmd_cfa->add_option("input", input, "program file or '-'")->required();
  cmd_cfa->add_option("--rules", rules_csv, "comma-separated rule ids");
  cmd_cfa->add_option("--max-nesting", max_nesting,
                      "cap rule instances per site");
  cmd_cfa->add_flag("--transformed", transformed,
                    "transform before building the automaton");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    using namespace bitbranch;
    if (cmd_transform->parsed()) {
      const Program p = parse_program(read_input(input));
      const TransformOptions opts = make_options(rules_csv, max_nesting);
      const Program tp = transform_program(p, opts);
      if (!cfa_dot_path.empty()) {
        const Cfa cfa = build_cfa(branch_normalize(tp));
        std::ofstream out(cfa_dot_path);
        if (!out) throw std::runtime_error("cannot write '" + cfa_dot_path + "'");
        out << to_dot(cfa);
      }
      if (emit_mode == "json") {
        std::cout << to_json(tp) << "\n";
      } else {
        std::cout << pretty_print(tp, PrintOptions{annotate});
      }
      return 0;
    }
    if (cmd_rules->parsed()) {
      return run_check_rules(rules_width);
    }
    if (cmd_reach->parsed()) {
      const Program p = parse_program(read_input(input));
      const ReachResult r = reachable(p, MachineConfig{width}, bound);
      std::cout << to_json(r) << "\n";
      return 0;
    }
    if (cmd_sound->parsed()) {
      const MachineConfig cfg{width};
      if (fuzz || (input.empty() && count > 0)) {
        if (count <= 0) count = 100;
        if (bound == 100000) bound = 10000;
        const FuzzResult r = fuzz_inclusion(seed, count, cfg, bound);
        std::cout << to_json(r) << "\n";
        return r.failures.empty() ? 0 : 1;
      }
      if (input.empty()) {
        std::cerr << "error: soundness needs an input program or --fuzz\n";
        return 2;
      }
      const Program p = parse_program(read_input(input));
      if (certify) {
        const SafetyReport r = certify_safety(p, {}, cfg, bound);
        std::cout << to_json(r) << "\n";
        return r.classification == SafetyClass::Safe ? 0 : 1;
      }
      const InclusionVerdict v = check_inclusion(p, {}, cfg, bound);
      std::cout << to_json(v) << "\n";
      return v.holds() ? 0 : 1;
    }
    if (cmd_cfa->parsed()) {
      Program p = parse_program(read_input(input));
      if (transformed) {
        p = transform_program(p, make_options(rules_csv, max_nesting));
      }
      std::cout << to_dot(build_cfa(branch_normalize(p)));
      return 0;
    }
  } catch (const bitbranch::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
