#include "bitbranch/eval.hpp"

#include <stdexcept>

#include "eval_impl.hpp"

namespace bitbranch {

std::int64_t MachineConfig::wrap(std::int64_t v) const {
  const std::uint64_t mask = (std::uint64_t{1} << width) - 1;
  const std::uint64_t u = static_cast<std::uint64_t>(v) & mask;
  if (u & (std::uint64_t{1} << (width - 1))) {
    return static_cast<std::int64_t>(u | ~mask);
  }
  return static_cast<std::int64_t>(u);
}

std::uint64_t MachineConfig::pattern(std::int64_t v) const {
  const std::uint64_t mask = (std::uint64_t{1} << width) - 1;
  return static_cast<std::uint64_t>(v) & mask;
}

std::string_view fault_name(FaultKind k) {
  switch (k) {
    case FaultKind::DivByZero: return "DivByZero";
    case FaultKind::ShiftOutOfRange: return "ShiftOutOfRange";
  }
  return "?";
}

EvalResult apply_binop(BinOp op, std::int64_t a, std::int64_t b,
                       const MachineConfig& cfg) {
  switch (op) {
    case BinOp::Add:
      return EvalResult::ok(cfg.wrap(a + b));
    case BinOp::Sub:
      return EvalResult::ok(cfg.wrap(a - b));
    case BinOp::Mul:
      return EvalResult::ok(cfg.wrap(a * b));
    case BinOp::Div:
      if (b == 0) return EvalResult::fault(FaultKind::DivByZero);
      return EvalResult::ok(cfg.wrap(a / b));
    case BinOp::Mod:
      if (b == 0) return EvalResult::fault(FaultKind::DivByZero);
      return EvalResult::ok(cfg.wrap(a % b));
    case BinOp::BitAnd:
      return EvalResult::ok(
          cfg.wrap(static_cast<std::int64_t>(cfg.pattern(a) & cfg.pattern(b))));
    case BinOp::BitOr:
      return EvalResult::ok(
          cfg.wrap(static_cast<std::int64_t>(cfg.pattern(a) | cfg.pattern(b))));
    case BinOp::BitXor:
      return EvalResult::ok(
          cfg.wrap(static_cast<std::int64_t>(cfg.pattern(a) ^ cfg.pattern(b))));
    case BinOp::Shl:
      if (b < 0 || b >= cfg.width) {
        return EvalResult::fault(FaultKind::ShiftOutOfRange);
      }
      return EvalResult::ok(
          cfg.wrap(static_cast<std::int64_t>(cfg.pattern(a) << b)));
    case BinOp::Shr:
      if (b < 0 || b >= cfg.width) {
        return EvalResult::fault(FaultKind::ShiftOutOfRange);
      }
      // a is in-domain, so the signed shift is the arithmetic one.
      return EvalResult::ok(cfg.wrap(a >> b));
    case BinOp::Lt:
      return EvalResult::ok(a < b ? 1 : 0);
    case BinOp::Le:
      return EvalResult::ok(a <= b ? 1 : 0);
    case BinOp::Gt:
      return EvalResult::ok(a > b ? 1 : 0);
    case BinOp::Ge:
      return EvalResult::ok(a >= b ? 1 : 0);
    case BinOp::Eq:
      return EvalResult::ok(a == b ? 1 : 0);
    case BinOp::Ne:
      return EvalResult::ok(a != b ? 1 : 0);
    case BinOp::LogAnd:
      return EvalResult::ok((a != 0 && b != 0) ? 1 : 0);
    case BinOp::LogOr:
      return EvalResult::ok((a != 0 || b != 0) ? 1 : 0);
  }
  throw std::logic_error("apply_binop: bad operator");
}

EvalResult apply_unop(UnOp op, std::int64_t v, const MachineConfig& cfg) {
  switch (op) {
    case UnOp::Neg:
      return EvalResult::ok(cfg.wrap(-v));
    case UnOp::LogNot:
      return EvalResult::ok(v == 0 ? 1 : 0);
    case UnOp::BitNot:
      return EvalResult::ok(cfg.wrap(-v - 1));
  }
  throw std::logic_error("apply_unop: bad operator");
}

EvalResult eval_expr(const Expr& e, const State& sigma,
                     const MachineConfig& cfg) {
  return detail::eval_with(
      e,
      [&](const Ident& id) -> std::int64_t {
        auto it = sigma.find(id);
        if (it == sigma.end()) {
          throw std::invalid_argument("eval_expr: unbound variable '" +
                                      id.name + "'");
        }
        return it->second;
      },
      cfg);
}

}  // namespace bitbranch
