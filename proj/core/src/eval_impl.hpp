#pragma once

#include <utility>

#include "bitbranch/ast.hpp"
#include "bitbranch/eval.hpp"

namespace bitbranch::detail {

// Shared evaluation walker. Lookup maps an Ident to its (in-domain) value;
// && and || short-circuit, Ite evaluates exactly one arm, Opaque is
// transparent.
template <class Lookup>
EvalResult eval_with(const Expr& e, Lookup&& lookup, const MachineConfig& cfg) {
  struct Visitor {
    Lookup& lk;
    const MachineConfig& cfg;

    EvalResult rec(const Expr& e) { return std::visit(*this, e.node); }

    EvalResult operator()(const LitExpr& x) {
      return EvalResult::ok(cfg.wrap(x.value));
    }
    EvalResult operator()(const BoolExpr& x) {
      return EvalResult::ok(x.value ? 1 : 0);
    }
    EvalResult operator()(const VarExpr& x) {
      return EvalResult::ok(lk(x.name));
    }
    EvalResult operator()(const WidthExpr&) {
      return EvalResult::ok(cfg.wrap(cfg.width));
    }
    EvalResult operator()(const UnaryExpr& x) {
      EvalResult a = rec(*x.arg);
      if (a.is_fault()) return a;
      return apply_unop(x.op, a.value(), cfg);
    }
    EvalResult operator()(const BinaryExpr& x) {
      if (x.op == BinOp::LogAnd) {
        EvalResult a = rec(*x.lhs);
        if (a.is_fault()) return a;
        if (a.value() == 0) return EvalResult::ok(0);
        EvalResult b = rec(*x.rhs);
        if (b.is_fault()) return b;
        return EvalResult::ok(b.value() != 0 ? 1 : 0);
      }
      if (x.op == BinOp::LogOr) {
        EvalResult a = rec(*x.lhs);
        if (a.is_fault()) return a;
        if (a.value() != 0) return EvalResult::ok(1);
        EvalResult b = rec(*x.rhs);
        if (b.is_fault()) return b;
        return EvalResult::ok(b.value() != 0 ? 1 : 0);
      }
      EvalResult a = rec(*x.lhs);
      if (a.is_fault()) return a;
      EvalResult b = rec(*x.rhs);
      if (b.is_fault()) return b;
      return apply_binop(x.op, a.value(), b.value(), cfg);
    }
    EvalResult operator()(const IteExpr& x) {
      EvalResult c = rec(*x.cond);
      if (c.is_fault()) return c;
      return rec(c.value() != 0 ? *x.then_arm : *x.else_arm);
    }
    EvalResult operator()(const OpaqueExpr& x) { return rec(*x.inner); }
  };
  Visitor v{lookup, cfg};
  return v.rec(e);
}

}  // namespace bitbranch::detail
