#include "bitbranch/rule_check.hpp"

#include <stdexcept>

#include "eval_impl.hpp"

namespace bitbranch {

std::string RuleCounterexample::to_string() const {
  std::string out;
  for (const auto& [name, value] : binding) {
    if (!out.empty()) out += ' ';
    out += name + "=" + std::to_string(value);
  }
  if (!relator.empty()) out += " rel=" + relator;
  if (fault) {
    out += " fault";
  } else {
    out += " lhs=" + std::to_string(lhs) + " rhs=" + std::to_string(rhs);
  }
  return out;
}

namespace {

// Templates only mention the holes e1, e2, r; resolving them by name keeps
// the cube enumeration cheap.
struct HoleState {
  std::int64_t e1 = 0;
  std::int64_t e2 = 0;
  std::int64_t r = 0;

  std::int64_t operator()(const Ident& id) const {
    if (id.name == "e1") return e1;
    if (id.name == "e2") return e2;
    if (id.name == "r") return r;
    throw std::invalid_argument("rule template references unknown hole '" +
                                id.name + "'");
  }
};

RuleVerdict check_rewrite(const Rule& rule, const MachineConfig& cfg) {
  RuleVerdict v{rule.id, cfg.width, true, 0, std::nullopt};
  HoleState st;
  const std::int64_t lo = cfg.min_value();
  const std::int64_t hi = cfg.max_value();

  auto report = [&](std::int64_t lhs, std::int64_t rhs, bool fault) {
    RuleCounterexample cex;
    cex.binding = {{"e1", st.e1}};
    if (!rule.complement) cex.binding.emplace_back("e2", st.e2);
    cex.lhs = lhs;
    cex.rhs = rhs;
    cex.fault = fault;
    v.pass = false;
    v.counterexample = std::move(cex);
  };

  for (st.e1 = lo; st.e1 <= hi && v.pass; ++st.e1) {
    for (st.e2 = lo; st.e2 <= hi && v.pass; ++st.e2) {
      ++v.checked;
      EvalResult cond = detail::eval_with(*rule.condition, st, cfg);
      if (cond.is_fault()) {
        report(0, 0, true);
        break;
      }
      if (cond.value() == 0) continue;
      EvalResult bv = rule.complement
                          ? apply_unop(UnOp::BitNot, st.e1, cfg)
                          : apply_binop(*rule.op, st.e1, st.e2, cfg);
      EvalResult repl = detail::eval_with(*rule.replacement, st, cfg);
      if (bv.is_fault() || repl.is_fault()) {
        report(bv.is_fault() ? 0 : bv.value(),
               repl.is_fault() ? 0 : repl.value(), true);
        break;
      }
      if (bv.value() != repl.value()) {
        report(bv.value(), repl.value(), false);
        break;
      }
      if (rule.complement) break;  // e2 unused, one slice is enough
    }
  }
  return v;
}

RuleVerdict check_weaken(const Rule& rule, const MachineConfig& cfg) {
  RuleVerdict v{rule.id, cfg.width, true, 0, std::nullopt};
  HoleState st;
  const std::int64_t lo = cfg.min_value();
  const std::int64_t hi = cfg.max_value();
  const std::vector<BinOp> relators =
      rule.zero_relatum ? std::vector<BinOp>{BinOp::Eq}
                        : rel_class_check_relators(*rule.rel_class);

  auto report = [&](BinOp relator, std::int64_t constraint_value, bool fault) {
    RuleCounterexample cex;
    cex.binding = {{"e1", st.e1}};
    if (!rule.complement) cex.binding.emplace_back("e2", st.e2);
    cex.binding.emplace_back("r", st.r);
    cex.relator = std::string(op_token(relator));
    cex.lhs = 1;  // condition and relation held
    cex.rhs = constraint_value;
    cex.fault = fault;
    v.pass = false;
    v.counterexample = std::move(cex);
  };

  // One pass per relator in the rule's class, := read as ==.
  for (BinOp relator : relators) {
    for (st.e1 = lo; st.e1 <= hi && v.pass; ++st.e1) {
      const std::int64_t e2_hi = rule.complement ? lo : hi;
      for (st.e2 = lo; st.e2 <= e2_hi && v.pass; ++st.e2) {
        EvalResult cond = detail::eval_with(*rule.condition, st, cfg);
        if (cond.is_fault()) {
          st.r = 0;
          report(relator, 0, true);
          break;
        }
        EvalResult bv = rule.complement
                            ? apply_unop(UnOp::BitNot, st.e1, cfg)
                            : apply_binop(*rule.op, st.e1, st.e2, cfg);
        if (bv.is_fault()) {
          if (cond.value() != 0) {
            st.r = 0;
            report(relator, 0, true);
            break;
          }
          continue;
        }
        const std::int64_t r_lo = rule.zero_relatum ? 0 : lo;
        const std::int64_t r_hi = rule.zero_relatum ? 0 : hi;
        for (st.r = r_lo; st.r <= r_hi && v.pass; ++st.r) {
          ++v.checked;
          if (cond.value() == 0) continue;
          EvalResult related = apply_binop(relator, st.r, bv.value(), cfg);
          if (related.is_fault() || related.value() == 0) continue;
          EvalResult constraint =
              detail::eval_with(*rule.replacement, st, cfg);
          if (constraint.is_fault()) {
            report(relator, 0, true);
            break;
          }
          if (constraint.value() == 0) {
            report(relator, 0, false);
            break;
          }
        }
      }
    }
    if (!v.pass) break;
  }
  return v;
}

}  // namespace

RuleVerdict check_rule_correctness(const Rule& rule, const MachineConfig& cfg) {
  if (cfg.width < 2 || cfg.width > 8) {
    throw std::invalid_argument(
        "exhaustive rule checking is limited to widths 2..8");
  }
  return rule.kind == RuleKind::Rewrite ? check_rewrite(rule, cfg)
                                        : check_weaken(rule, cfg);
}

}  // namespace bitbranch
