#include "bitbranch/rules.hpp"

#include <stdexcept>

namespace bitbranch {

bool rel_class_contains(RelClass c, BinOp relator) {
  switch (c) {
    case RelClass::OpLe:
      return relator == BinOp::Lt || relator == BinOp::Le ||
             relator == BinOp::Eq;
    case RelClass::OpGe:
      return relator == BinOp::Gt || relator == BinOp::Ge ||
             relator == BinOp::Eq;
    case RelClass::OpEq:
      return relator == BinOp::Eq;
  }
  return false;
}

std::vector<BinOp> rel_class_check_relators(RelClass c) {
  // := is checked as equality between the assigned value and the result,
  // so it appears as a second Eq pass.
  switch (c) {
    case RelClass::OpLe:
      return {BinOp::Lt, BinOp::Le, BinOp::Eq, BinOp::Eq};
    case RelClass::OpGe:
      return {BinOp::Gt, BinOp::Ge, BinOp::Eq, BinOp::Eq};
    case RelClass::OpEq:
      return {BinOp::Eq, BinOp::Eq};
  }
  return {};
}

std::string_view rel_class_name(RelClass c) {
  switch (c) {
    case RelClass::OpLe: return "op_le";
    case RelClass::OpGe: return "op_ge";
    case RelClass::OpEq: return "op_eq";
  }
  return "?";
}

namespace {

ExprPtr h1() { return var("e1"); }
ExprPtr h2() { return var("e2"); }
ExprPtr hr() { return var("r"); }

ExprPtr eq(ExprPtr a, ExprPtr b) { return binary(BinOp::Eq, a, b); }
ExprPtr le(ExprPtr a, ExprPtr b) { return binary(BinOp::Le, a, b); }
ExprPtr ge(ExprPtr a, ExprPtr b) { return binary(BinOp::Ge, a, b); }
ExprPtr lt(ExprPtr a, ExprPtr b) { return binary(BinOp::Lt, a, b); }
ExprPtr land(ExprPtr a, ExprPtr b) { return binary(BinOp::LogAnd, a, b); }
ExprPtr lor(ExprPtr a, ExprPtr b) { return binary(BinOp::LogOr, a, b); }
ExprPtr ge0(ExprPtr a) { return ge(a, lit(0)); }
ExprPtr lt0(ExprPtr a) { return lt(a, lit(0)); }
ExprPtr is01(ExprPtr a) { return lor(eq(a, lit(0)), eq(a, lit(1))); }
ExprPtr width_minus_one() { return binary(BinOp::Sub, width(), lit(1)); }

Rule commuted_variant(const Rule& base) {
  Rule r = base;
  r.id = base.id + "-Comm";
  r.condition = substitute(base.condition, h2(), h1(), nullptr);
  r.replacement = substitute(base.replacement, h2(), h1(), nullptr);
  if (base.const_operand == 1) r.const_operand = 2;
  else if (base.const_operand == 2) r.const_operand = 1;
  r.commuted = true;
  return r;
}

std::vector<Rule> build_catalog() {
  std::vector<Rule> rules;

  // A rule is followed by its commuted variant exactly when swapping the
  // operands changes its meaning; fully symmetric rows have none.
  auto rewrite = [&](std::string id, BinOp op, ExprPtr cond, ExprPtr repl,
                     bool with_commuted) {
    Rule r;
    r.id = std::move(id);
    r.kind = RuleKind::Rewrite;
    r.op = op;
    r.condition = std::move(cond);
    r.replacement = std::move(repl);
    rules.push_back(r);
    if (with_commuted) rules.push_back(commuted_variant(r));
  };

  auto weaken = [&](std::string id, BinOp op, RelClass rel, ExprPtr cond,
                    ExprPtr constraint, bool with_commuted,
                    int const_operand = 0, bool zero_relatum = false) {
    Rule r;
    r.id = std::move(id);
    r.kind = RuleKind::Weaken;
    r.op = op;
    r.rel_class = rel;
    r.const_operand = const_operand;
    r.zero_relatum = zero_relatum;
    r.condition = std::move(cond);
    r.replacement = std::move(constraint);
    rules.push_back(r);
    if (with_commuted) rules.push_back(commuted_variant(r));
  };

  auto weaken_compl = [&](std::string id, RelClass rel, ExprPtr cond,
                          ExprPtr constraint) {
    Rule r;
    r.id = std::move(id);
    r.kind = RuleKind::Weaken;
    r.complement = true;
    r.rel_class = rel;
    r.condition = std::move(cond);
    r.replacement = std::move(constraint);
    rules.push_back(r);
  };

  rewrite("R-And-0", BinOp::BitAnd, eq(h1(), lit(0)), lit(0), true);
  rewrite("R-And-1", BinOp::BitAnd, land(is01(h1()), eq(h2(), lit(1))), h1(),
          true);
  rewrite("R-And-LOG", BinOp::BitAnd, land(is01(h1()), is01(h2())),
          land(h1(), h2()), false);
  rewrite("R-And-LBS", BinOp::BitAnd, land(ge0(h1()), eq(h2(), lit(1))),
          binary(BinOp::Mod, h1(), lit(2)), true);
  rewrite("R-Or-0", BinOp::BitOr, eq(h2(), lit(0)), h1(), true);
  rewrite("R-Or-1", BinOp::BitOr, land(is01(h1()), eq(h2(), lit(1))), lit(1),
          true);
  rewrite("R-Xor-0", BinOp::BitXor, eq(h2(), lit(0)), h1(), true);
  rewrite("R-Xor-Eq", BinOp::BitXor,
          lor(land(eq(h1(), lit(0)), eq(h2(), lit(0))),
              land(eq(h1(), lit(1)), eq(h2(), lit(1)))),
          lit(0), false);
  rewrite("R-Xor-Neq", BinOp::BitXor,
          lor(land(eq(h1(), lit(1)), eq(h2(), lit(0))),
              land(eq(h1(), lit(0)), eq(h2(), lit(1)))),
          lit(1), false);
  rewrite("R-RightShift-Pos", BinOp::Shr,
          land(ge0(h1()), eq(h2(), width_minus_one())), lit(0), false);
  rewrite("R-RightShift-Neg", BinOp::Shr,
          land(lt0(h1()), eq(h2(), width_minus_one())),
          unary(UnOp::Neg, lit(1)), false);

  weaken("W-And-Pos", BinOp::BitAnd, RelClass::OpLe, land(ge0(h1()), ge0(h2())),
         land(le(hr(), h1()), le(hr(), h2())), false);
  weaken("W-And-Neg", BinOp::BitAnd, RelClass::OpLe, land(lt0(h1()), lt0(h2())),
         land(land(le(hr(), h1()), le(hr(), h2())), lt0(hr())), false);
  weaken("W-And-Mix", BinOp::BitAnd, RelClass::OpEq, land(ge0(h1()), lt0(h2())),
         land(le(lit(0), hr()), le(hr(), h1())), true);
  weaken("R-Or-LOG", BinOp::BitOr, RelClass::OpEq, land(is01(h1()), is01(h2())),
         land(eq(h1(), lit(0)), eq(h2(), lit(0))), false, 0,
         /*zero_relatum=*/true);
  weaken("W-Or-Const", BinOp::BitOr, RelClass::OpGe, ge0(h1()),
         ge(hr(), h2()), true, /*const_operand=*/2);
  weaken("W-Or-Pos", BinOp::BitOr, RelClass::OpGe, land(ge0(h1()), ge0(h2())),
         land(ge(hr(), h1()), ge(hr(), h2())), false);
  weaken("W-Or-Neg", BinOp::BitOr, RelClass::OpEq, land(lt0(h1()), lt0(h2())),
         land(land(ge(hr(), h1()), ge(hr(), h2())), lt0(hr())), false);
  weaken("W-Or-Mix", BinOp::BitOr, RelClass::OpEq, land(ge0(h1()), lt0(h2())),
         land(le(h2(), hr()), lt0(hr())), true);
  weaken("W-XOr-Pos", BinOp::BitXor, RelClass::OpGe,
         land(ge0(h1()), ge0(h2())), ge0(hr()), false);
  weaken("W-XOr-Neg", BinOp::BitXor, RelClass::OpGe,
         land(lt0(h1()), lt0(h2())), ge0(hr()), false);
  weaken("W-XOr-Mix", BinOp::BitXor, RelClass::OpLe,
         land(ge0(h1()), lt0(h2())), lt0(hr()), true);
  weaken_compl("W-Cpl-Pos", RelClass::OpLe, ge0(h1()), lt0(hr()));
  weaken_compl("W-Cpl-Neg", RelClass::OpGe, lt0(h1()), ge0(hr()));

  return rules;
}

bool is_literal(const Expr& e) {
  return std::holds_alternative<LitExpr>(e.node);
}

BinOp mirror_relator(BinOp op) {
  switch (op) {
    case BinOp::Lt: return BinOp::Gt;
    case BinOp::Le: return BinOp::Ge;
    case BinOp::Gt: return BinOp::Lt;
    case BinOp::Ge: return BinOp::Le;
    default: return op;  // == and != are their own mirror
  }
}

// A bare bitvector site: a binary bitvector operation or a complement that
// is not already wrapped Opaque.
struct BvSite {
  std::optional<BinOp> op;
  bool complement = false;
  ExprPtr e1;
  ExprPtr e2;
};

std::optional<BvSite> bv_site(const Expr& e) {
  if (const auto* b = std::get_if<BinaryExpr>(&e.node)) {
    if (is_bitvector_op(b->op)) {
      return BvSite{b->op, false, b->lhs, b->rhs};
    }
  }
  if (const auto* u = std::get_if<UnaryExpr>(&e.node)) {
    if (u->op == UnOp::BitNot) {
      return BvSite{std::nullopt, true, u->arg, nullptr};
    }
  }
  return std::nullopt;
}

bool site_matches_rule(const Rule& r, const BvSite& site) {
  if (r.kind != RuleKind::Weaken) return false;
  if (site.complement != r.complement) return false;
  if (!site.complement && r.op != site.op) return false;
  if (r.const_operand == 1 && !is_literal(*site.e1)) return false;
  if (r.const_operand == 2 && !is_literal(*site.e2)) return false;
  return true;
}

}  // namespace

const std::vector<Rule>& rule_catalog() {
  static const std::vector<Rule> catalog = build_catalog();
  return catalog;
}

const Rule* find_rule(std::span<const Rule> catalog, std::string_view id) {
  for (const Rule& r : catalog) {
    if (r.id == id) return &r;
  }
  return nullptr;
}

std::ptrdiff_t rule_index(std::span<const Rule> catalog, std::string_view id) {
  for (std::size_t i = 0; i < catalog.size(); ++i) {
    if (catalog[i].id == id) return static_cast<std::ptrdiff_t>(i);
  }
  return -1;
}

std::vector<RuleInstance> match_expr_rules(BinOp op, const ExprPtr& e1,
                                           const ExprPtr& e2,
                                           std::span<const Rule> catalog) {
  std::vector<RuleInstance> out;
  if (!is_bitvector_op(op)) return out;
  for (std::size_t i = 0; i < catalog.size(); ++i) {
    const Rule& r = catalog[i];
    if (r.kind != RuleKind::Rewrite || r.op != op) continue;
    out.push_back(RuleInstance{i, e1, e2, nullptr});
  }
  return out;
}

std::vector<RuleInstance> match_assign_rules(const Ident& lhs, const Expr& rhs,
                                             std::span<const Rule> catalog) {
  std::vector<RuleInstance> out;
  std::optional<BvSite> site = bv_site(rhs);
  if (!site) return out;
  for (std::size_t i = 0; i < catalog.size(); ++i) {
    const Rule& r = catalog[i];
    // := is in every relational class; the zero-relatum shape is an assume
    // form and never matches assignments.
    if (r.zero_relatum || !site_matches_rule(r, *site)) continue;
    out.push_back(RuleInstance{i, site->e1, site->e2, var(lhs)});
  }
  return out;
}

std::vector<RuleInstance> match_assume_rules(const Expr& cond,
                                             std::span<const Rule> catalog) {
  std::vector<RuleInstance> out;
  const auto* rel = std::get_if<BinaryExpr>(&cond.node);
  if (!rel || !is_relational_op(rel->op)) return out;

  struct Orientation {
    BinOp relator;
    ExprPtr relatum;
    BvSite site;
  };
  std::vector<Orientation> orientations;
  if (auto site = bv_site(*rel->rhs)) {
    orientations.push_back(Orientation{rel->op, rel->lhs, *site});
  }
  if (auto site = bv_site(*rel->lhs)) {
    orientations.push_back(Orientation{mirror_relator(rel->op), rel->rhs,
                                       *site});
  }
  for (std::size_t i = 0; i < catalog.size(); ++i) {
    const Rule& r = catalog[i];
    if (r.kind != RuleKind::Weaken) continue;
    for (const Orientation& o : orientations) {
      if (!site_matches_rule(r, o.site)) continue;
      if (r.zero_relatum) {
        const auto* z = std::get_if<LitExpr>(&o.relatum->node);
        if (o.relator != BinOp::Eq || !z || z->value != 0) continue;
      } else if (!rel_class_contains(*r.rel_class, o.relator)) {
        continue;
      }
      out.push_back(RuleInstance{i, o.site.e1, o.site.e2, o.relatum});
    }
  }
  return out;
}

ExprPtr substitute(const ExprPtr& tmpl, const ExprPtr& e1, const ExprPtr& e2,
                   const ExprPtr& r) {
  return std::visit(
      [&](const auto& x) -> ExprPtr {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, VarExpr>) {
          if (x.name.name == "e1" && e1) return e1;
          if (x.name.name == "e2" && e2) return e2;
          if (x.name.name == "r" && r) return r;
          return tmpl;
        } else if constexpr (std::is_same_v<T, UnaryExpr>) {
          return unary(x.op, substitute(x.arg, e1, e2, r));
        } else if constexpr (std::is_same_v<T, BinaryExpr>) {
          return binary(x.op, substitute(x.lhs, e1, e2, r),
                        substitute(x.rhs, e1, e2, r));
        } else if constexpr (std::is_same_v<T, IteExpr>) {
          return ite(substitute(x.cond, e1, e2, r),
                     substitute(x.then_arm, e1, e2, r),
                     substitute(x.else_arm, e1, e2, r));
        } else if constexpr (std::is_same_v<T, OpaqueExpr>) {
          return opaque(substitute(x.inner, e1, e2, r));
        } else {
          return tmpl;
        }
      },
      tmpl->node);
}

Instantiation instantiate(const RuleInstance& inst,
                          std::span<const Rule> catalog) {
  const Rule& r = catalog[inst.rule_index];
  return Instantiation{
      substitute(r.condition, inst.e1, inst.e2, inst.relatum),
      substitute(r.replacement, inst.e1, inst.e2, inst.relatum),
  };
}

}  // namespace bitbranch
