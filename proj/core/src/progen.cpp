#include "bitbranch/progen.hpp"

#include <random>

namespace bitbranch {

namespace {

// Sub-expressions are always drawn into locals before combination; argument
// evaluation order must not influence what a seed generates.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  int below(int n) {
    return static_cast<int>(gen_() % static_cast<std::uint64_t>(n));
  }
  bool chance(int percent) { return below(100) < percent; }

 private:
  std::mt19937_64 gen_;
};

const BinOp kArith[] = {BinOp::Add, BinOp::Sub, BinOp::Mul, BinOp::Div,
                        BinOp::Mod};
const BinOp kBitwise[] = {BinOp::BitAnd, BinOp::BitOr, BinOp::BitXor,
                          BinOp::Shl, BinOp::Shr};
const BinOp kRelational[] = {BinOp::Lt, BinOp::Le, BinOp::Gt,
                             BinOp::Ge, BinOp::Eq, BinOp::Ne};

class ProgramGen {
 public:
  ProgramGen(std::uint64_t seed, const MachineConfig& cfg,
             const GenOptions& opts)
      : rng_(seed), cfg_(cfg), opts_(opts) {}

  Program generate() {
    Program p;
    const int nvars = 1 + rng_.below(opts_.max_vars);
    const char* names[] = {"a", "b", "c", "d", "e", "f"};
    for (int i = 0; i < nvars; ++i) p.decls.push_back(Ident{names[i]});
    vars_ = p.decls;
    loops_left_ = opts_.max_loops;
    stmts_left_ = opts_.max_stmts;

    for (const Ident& v : vars_) {
      if (rng_.chance(60)) p.body.push_back(havoc(v));
    }
    Block body = gen_block(2);
    p.body.insert(p.body.end(), body.begin(), body.end());
    renumber_origins(p);
    return p;
  }

 private:
  ExprPtr a_var() { return var(vars_[rng_.below((int)vars_.size())]); }
  ExprPtr a_lit() { return lit(rng_.below(8)); }

  ExprPtr gen_expr(int depth) {
    if (depth <= 0 || rng_.chance(30)) {
      return rng_.chance(55) ? a_var() : a_lit();
    }
    const int roll = rng_.below(100);
    if (roll < 45) {
      // bitvector shapes are the point of the corpus
      const BinOp op = kBitwise[rng_.below(5)];
      if (op == BinOp::Shl || op == BinOp::Shr) {
        ExprPtr lhs = gen_expr(depth - 1);
        // shift amounts stay syntactically in range for the width
        ExprPtr amount = rng_.chance(25)
                             ? binary(BinOp::Sub, width(), lit(1))
                             : lit(rng_.below(cfg_.width));
        return binary(op, std::move(lhs), std::move(amount));
      }
      ExprPtr lhs = gen_expr(depth - 1);
      ExprPtr rhs = gen_expr(depth - 1);
      return binary(op, std::move(lhs), std::move(rhs));
    }
    if (roll < 75) {
      const BinOp op = kArith[rng_.below(5)];
      if (op == BinOp::Div || op == BinOp::Mod) {
        ExprPtr lhs = gen_expr(depth - 1);
        ExprPtr divisor = lit(1 + rng_.below(6));  // nonzero literal
        return binary(op, std::move(lhs), std::move(divisor));
      }
      ExprPtr lhs = gen_expr(depth - 1);
      ExprPtr rhs = gen_expr(depth - 1);
      return binary(op, std::move(lhs), std::move(rhs));
    }
    if (roll < 85) {
      const int pick = rng_.below(3);
      const UnOp op = pick == 0   ? UnOp::BitNot
                      : pick == 1 ? UnOp::Neg
                                  : UnOp::LogNot;
      return unary(op, gen_expr(depth - 1));
    }
    if (roll < 95) {
      const BinOp op = kRelational[rng_.below(6)];
      ExprPtr lhs = gen_expr(depth - 1);
      ExprPtr rhs = gen_expr(depth - 1);
      return binary(op, std::move(lhs), std::move(rhs));
    }
    ExprPtr cond = gen_rel(depth - 1);
    ExprPtr then_arm = gen_expr(depth - 1);
    ExprPtr else_arm = gen_expr(depth - 1);
    return ite(std::move(cond), std::move(then_arm), std::move(else_arm));
  }

  ExprPtr gen_rel(int depth) {
    const BinOp op = kRelational[rng_.below(6)];
    ExprPtr lhs = rng_.chance(70) ? a_var() : gen_expr(depth);
    ExprPtr rhs = rng_.chance(50) ? gen_expr(depth) : a_var();
    return binary(op, std::move(lhs), std::move(rhs));
  }

  Block gen_block(int depth) {
    Block b;
    const int n = 1 + rng_.below(std::max(1, stmts_left_ > 3 ? 3 : stmts_left_));
    for (int i = 0; i < n && stmts_left_ > 0; ++i) {
      --stmts_left_;
      b.push_back(gen_stmt(depth));
    }
    return b;
  }

  StmtPtr gen_stmt(int depth) {
    const int roll = rng_.below(100);
    if (roll < 40 || depth <= 0) {
      const Ident lhs = vars_[rng_.below((int)vars_.size())];
      return assign(lhs, gen_expr(opts_.max_expr_depth));
    }
    if (roll < 52) return assume(gen_rel(opts_.max_expr_depth - 1));
    if (roll < 60) return havoc(vars_[rng_.below((int)vars_.size())]);
    if (roll < 72) {
      ExprPtr cond = gen_rel(opts_.max_expr_depth - 1);
      Block then_b = gen_block(depth - 1);
      Block else_b = rng_.chance(50) ? gen_block(depth - 1) : Block{};
      return if_cond(std::move(cond), std::move(then_b), std::move(else_b));
    }
    if (roll < 80) {
      Block then_b = gen_block(depth - 1);
      Block else_b = rng_.chance(50) ? gen_block(depth - 1) : Block{};
      return if_nondet(std::move(then_b), std::move(else_b));
    }
    if (roll < 92 && loops_left_ > 0) {
      --loops_left_;
      ExprPtr cond = gen_rel(opts_.max_expr_depth - 1);
      Block body = gen_block(depth - 1);
      return while_loop(std::move(cond), std::move(body));
    }
    if (opts_.allow_error) return error();
    return havoc(vars_[rng_.below((int)vars_.size())]);
  }

  Rng rng_;
  MachineConfig cfg_;
  GenOptions opts_;
  std::vector<Ident> vars_;
  int loops_left_ = 0;
  int stmts_left_ = 0;
};

class ExprGen {
 public:
  ExprGen(std::uint64_t seed, const std::vector<Ident>& vars)
      : rng_(seed), vars_(vars) {}

  ExprPtr gen(int depth) {
    if (depth <= 0 || rng_.chance(25)) return leaf();
    switch (rng_.below(10)) {
      case 0: {
        const UnOp op = static_cast<UnOp>(rng_.below(3));
        return unary(op, gen(depth - 1));
      }
      case 1: {
        ExprPtr cond = gen(depth - 1);
        ExprPtr then_arm = gen(depth - 1);
        ExprPtr else_arm = gen(depth - 1);
        return ite(std::move(cond), std::move(then_arm), std::move(else_arm));
      }
      case 2:
        if (rng_.chance(25)) return opaque(gen(depth - 1));
        [[fallthrough]];
      default: {
        const BinOp op = static_cast<BinOp>(rng_.below(18));
        ExprPtr lhs = gen(depth - 1);
        ExprPtr rhs = gen(depth - 1);
        return binary(op, std::move(lhs), std::move(rhs));
      }
    }
  }

 private:
  ExprPtr leaf() {
    switch (rng_.below(10)) {
      case 0: return boolean(rng_.chance(50));
      case 1: return width();
      case 2:
      case 3: return lit(rng_.below(40));
      default:
        return vars_.empty() ? lit(rng_.below(8))
                             : var(vars_[rng_.below((int)vars_.size())]);
    }
  }

  Rng rng_;
  const std::vector<Ident>& vars_;
};

}  // namespace

Program random_program(std::uint64_t seed, const MachineConfig& cfg,
                       const GenOptions& opts) {
  ProgramGen g(seed, cfg, opts);
  return g.generate();
}

ExprPtr random_expr(std::uint64_t seed, const std::vector<Ident>& vars,
                    int max_depth) {
  ExprGen g(seed, vars);
  return g.gen(max_depth);
}

}  // namespace bitbranch
