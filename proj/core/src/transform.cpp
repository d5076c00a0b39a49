#include "bitbranch/transform.hpp"

#include <algorithm>

namespace bitbranch {

namespace {

bool rule_enabled(const Rule& r, const TransformOptions& opts) {
  return !opts.enabled_rules || opts.enabled_rules->count(r.id) > 0;
}

void cap_nesting(std::vector<RuleInstance>& insts,
                 const TransformOptions& opts) {
  if (opts.max_nesting && *opts.max_nesting >= 0 &&
      insts.size() > static_cast<std::size_t>(*opts.max_nesting)) {
    insts.resize(static_cast<std::size_t>(*opts.max_nesting));
  }
}

bool bare_bv(const Expr& e) {
  if (const auto* b = std::get_if<BinaryExpr>(&e.node)) {
    return is_bitvector_op(b->op);
  }
  if (const auto* u = std::get_if<UnaryExpr>(&e.node)) {
    return u->op == UnOp::BitNot;
  }
  return false;
}

// Residual marker: the transformed tree never carries an unwrapped
// bitvector node at a position a later pass would match again.
ExprPtr mark_residual(const ExprPtr& e) {
  return bare_bv(*e) ? opaque(e) : e;
}

struct Ctx {
  const TransformOptions& opts;
  std::span<const Rule> catalog;
};

ExprPtr tx_expr(const ExprPtr& e, const Ctx& ctx);

// Matching rewrite instances, restricted to enabled rules whose
// instantiated guard stays bitvector-free, capped by max_nesting. Each
// entry carries its instantiation.
std::vector<std::pair<RuleInstance, Instantiation>> rewrite_plan(
    BinOp op, const ExprPtr& e1, const ExprPtr& e2, const Ctx& ctx) {
  std::vector<RuleInstance> insts = match_expr_rules(op, e1, e2, ctx.catalog);
  std::erase_if(insts, [&](const RuleInstance& i) {
    return !rule_enabled(ctx.catalog[i.rule_index], ctx.opts);
  });
  std::vector<std::pair<RuleInstance, Instantiation>> plan;
  for (const RuleInstance& i : insts) {
    Instantiation inst = instantiate(i, ctx.catalog);
    if (!is_bitfree(inst.condition)) continue;
    plan.emplace_back(i, std::move(inst));
    if (ctx.opts.max_nesting &&
        plan.size() >= static_cast<std::size_t>(
                           std::max(0, *ctx.opts.max_nesting))) {
      break;
    }
  }
  return plan;
}

ExprPtr tx_expr(const ExprPtr& e, const Ctx& ctx) {
  return std::visit(
      [&](const auto& x) -> ExprPtr {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, UnaryExpr>) {
          // No rewrite rules exist for ~; operands still get translated.
          return unary(x.op, tx_expr(x.arg, ctx));
        } else if constexpr (std::is_same_v<T, BinaryExpr>) {
          ExprPtr l = tx_expr(x.lhs, ctx);
          ExprPtr r = tx_expr(x.rhs, ctx);
          if (!is_bitvector_op(x.op)) return binary(x.op, l, r);
          auto plan = rewrite_plan(x.op, l, r, ctx);
          if (plan.empty()) return binary(x.op, l, r);
          // First catalog rule outermost: fold from the back onto the
          // Opaque-wrapped original operation.
          ExprPtr acc = opaque(binary(x.op, l, r));
          for (auto it = plan.rbegin(); it != plan.rend(); ++it) {
            acc = ite(it->second.condition, it->second.replacement, acc);
          }
          return acc;
        } else if constexpr (std::is_same_v<T, IteExpr>) {
          return ite(tx_expr(x.cond, ctx), tx_expr(x.then_arm, ctx),
                     tx_expr(x.else_arm, ctx));
        } else {
          return e;  // literals, vars, WIDTH, Opaque: no descent
        }
      },
      e->node);
}

Block tx_block(const Block& b, FreshNames& fresh, const Ctx& ctx);

// Weakened assignment: capture the translated operands, then fold the
// enabled instances into a guarded havoc/assume chain whose final else
// performs the original operation on the captured operands.
Block weaken_assign(const AssignStmt& st, std::optional<int> origin,
                    std::vector<RuleInstance> insts, FreshNames& fresh,
                    const Ctx& ctx) {
  std::erase_if(insts, [&](const RuleInstance& i) {
    return !rule_enabled(ctx.catalog[i.rule_index], ctx.opts);
  });
  cap_nesting(insts, ctx.opts);
  if (insts.empty()) {
    return {assign(st.lhs, tx_expr(st.rhs, ctx), origin)};
  }

  const auto& rhs_node = st.rhs->node;
  Block out;
  ExprPtr else_rhs;
  ExprPtr t1_expr;
  ExprPtr t2_expr;
  if (const auto* bin = std::get_if<BinaryExpr>(&rhs_node)) {
    Ident t1 = fresh.next();
    Ident t2 = fresh.next();
    out.push_back(assign(t1, mark_residual(tx_expr(bin->lhs, ctx)), origin));
    out.push_back(assign(t2, mark_residual(tx_expr(bin->rhs, ctx)), origin));
    t1_expr = var(t1);
    t2_expr = var(t2);
    else_rhs = opaque(binary(bin->op, t1_expr, t2_expr));
  } else {
    const auto& un = std::get<UnaryExpr>(rhs_node);
    Ident t1 = fresh.next();
    out.push_back(assign(t1, mark_residual(tx_expr(un.arg, ctx)), origin));
    t1_expr = var(t1);
    else_rhs = opaque(unary(UnOp::BitNot, t1_expr));
  }

  Block chain{assign(st.lhs, else_rhs, origin)};
  for (auto it = insts.rbegin(); it != insts.rend(); ++it) {
    RuleInstance bound{it->rule_index, t1_expr, t2_expr, var(st.lhs)};
    Instantiation inst = instantiate(bound, ctx.catalog);
    Block arm{havoc(st.lhs, origin), assume(inst.replacement, origin)};
    chain = {if_cond(inst.condition, std::move(arm), std::move(chain), origin)};
  }
  out.insert(out.end(), chain.begin(), chain.end());
  return out;
}

// Weakened assumption: no state changes, so operands are used in place.
// Instances whose instantiated guard or constraint is not bitvector-free
// are skipped; the surviving ones therefore reference bitfree operands
// only, and the expression translation leaves those untouched.
Block weaken_assume(const AssumeStmt& st, std::optional<int> origin,
                    const Ctx& ctx) {
  std::vector<RuleInstance> insts = match_assume_rules(*st.cond, ctx.catalog);
  std::erase_if(insts, [&](const RuleInstance& i) {
    return !rule_enabled(ctx.catalog[i.rule_index], ctx.opts);
  });
  std::vector<std::pair<RuleInstance, Instantiation>> plan;
  for (const RuleInstance& i : insts) {
    Instantiation inst = instantiate(i, ctx.catalog);
    if (!is_bitfree(inst.condition) || !is_bitfree(inst.replacement)) continue;
    plan.emplace_back(i, std::move(inst));
    if (ctx.opts.max_nesting &&
        plan.size() >= static_cast<std::size_t>(
                           std::max(0, *ctx.opts.max_nesting))) {
      break;
    }
  }
  if (plan.empty()) {
    return {assume(tx_expr(st.cond, ctx), origin)};
  }

  // Fallback keeps the matched bitvector side, operands translated and the
  // residual operator wrapped, preserving the original orientation.
  const auto& rel = std::get<BinaryExpr>(st.cond->node);
  auto rebuild_side = [&](const ExprPtr& side) -> ExprPtr {
    if (const auto* b = std::get_if<BinaryExpr>(&side->node);
        b && is_bitvector_op(b->op)) {
      return opaque(binary(b->op, tx_expr(b->lhs, ctx), tx_expr(b->rhs, ctx)));
    }
    if (const auto* u = std::get_if<UnaryExpr>(&side->node);
        u && u->op == UnOp::BitNot) {
      return opaque(unary(UnOp::BitNot, tx_expr(u->arg, ctx)));
    }
    return tx_expr(side, ctx);
  };
  ExprPtr fallback =
      binary(rel.op, rebuild_side(rel.lhs), rebuild_side(rel.rhs));

  Block chain{assume(fallback, origin)};
  for (auto it = plan.rbegin(); it != plan.rend(); ++it) {
    Block arm{assume(it->second.replacement, origin)};
    chain = {
        if_cond(it->second.condition, std::move(arm), std::move(chain), origin)};
  }
  return chain;
}

Block tx_stmt(const StmtPtr& s, FreshNames& fresh, const Ctx& ctx) {
  return std::visit(
      [&](const auto& x) -> Block {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, AssignStmt>) {
          std::vector<RuleInstance> insts =
              match_assign_rules(x.lhs, *x.rhs, ctx.catalog);
          if (!insts.empty()) {
            return weaken_assign(x, s->origin, std::move(insts), fresh, ctx);
          }
          return {assign(x.lhs, tx_expr(x.rhs, ctx), s->origin)};
        } else if constexpr (std::is_same_v<T, AssumeStmt>) {
          return weaken_assume(x, s->origin, ctx);
        } else if constexpr (std::is_same_v<T, HavocStmt> ||
                             std::is_same_v<T, ErrorStmt>) {
          return {s};
        } else if constexpr (std::is_same_v<T, IfCondStmt>) {
          // Conditions are never weakened, only translated.
          return {if_cond(tx_expr(x.cond, ctx), tx_block(x.then_block, fresh, ctx),
                          tx_block(x.else_block, fresh, ctx), s->origin)};
        } else if constexpr (std::is_same_v<T, IfNondetStmt>) {
          return {if_nondet(tx_block(x.then_block, fresh, ctx),
                            tx_block(x.else_block, fresh, ctx), s->origin)};
        } else {
          return {while_loop(tx_expr(x.cond, ctx),
                             tx_block(x.body, fresh, ctx), s->origin)};
        }
      },
      s->node);
}

Block tx_block(const Block& b, FreshNames& fresh, const Ctx& ctx) {
  Block out;
  for (const StmtPtr& s : b) {
    Block piece = tx_stmt(s, fresh, ctx);
    out.insert(out.end(), piece.begin(), piece.end());
  }
  return out;
}

StmtPtr normalize_stmt(const StmtPtr& s);

Block normalize_block(const Block& b) {
  Block out;
  out.reserve(b.size());
  for (const StmtPtr& s : b) out.push_back(normalize_stmt(s));
  return out;
}

StmtPtr normalize_stmt(const StmtPtr& s) {
  return std::visit(
      [&](const auto& x) -> StmtPtr {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, IfCondStmt>) {
          Block then_b = normalize_block(x.then_block);
          Block else_b = normalize_block(x.else_block);
          then_b.insert(then_b.begin(), assume(x.cond, s->origin));
          else_b.insert(else_b.begin(),
                        assume(unary(UnOp::LogNot, x.cond), s->origin));
          return if_nondet(std::move(then_b), std::move(else_b), s->origin);
        } else if constexpr (std::is_same_v<T, IfNondetStmt>) {
          return if_nondet(normalize_block(x.then_block),
                           normalize_block(x.else_block), s->origin);
        } else if constexpr (std::is_same_v<T, WhileStmt>) {
          return while_loop(x.cond, normalize_block(x.body), s->origin);
        } else {
          return s;
        }
      },
      s->node);
}

}  // namespace

FreshNames::FreshNames(std::string prefix, const std::vector<Ident>& taken)
    : prefix_(std::move(prefix)) {
  for (const Ident& id : taken) taken_.insert(id.name);
}

Ident FreshNames::next() {
  for (;;) {
    std::string name = prefix_ + std::to_string(counter_++);
    if (taken_.insert(name).second) {
      generated_.push_back(Ident{name});
      return Ident{std::move(name)};
    }
  }
}

Program branch_normalize(const Program& p) {
  return Program{p.decls, normalize_block(p.body)};
}

ExprPtr transform_expr(const ExprPtr& e, const TransformOptions& opts,
                       std::span<const Rule> catalog) {
  return tx_expr(e, Ctx{opts, catalog});
}

Block transform_stmt(const StmtPtr& s, FreshNames& fresh,
                     const TransformOptions& opts,
                     std::span<const Rule> catalog) {
  return tx_stmt(s, fresh, Ctx{opts, catalog});
}

Program transform_program(const Program& p, const TransformOptions& opts,
                          std::span<const Rule> catalog) {
  FreshNames fresh(opts.fresh_prefix, p.decls);
  Ctx ctx{opts, catalog};
  Program out;
  out.decls = p.decls;
  out.body = tx_block(p.body, fresh, ctx);
  const auto& generated = fresh.generated();
  out.decls.insert(out.decls.end(), generated.begin(), generated.end());
  return out;
}

}  // namespace bitbranch
