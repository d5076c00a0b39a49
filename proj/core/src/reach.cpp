#include "bitbranch/reach.hpp"

#include <deque>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "eval_impl.hpp"
#include "json.hpp"

namespace bitbranch {

namespace {

// The statement tree is flattened into a little jump program; one location
// per instruction, so the visited set keys on (pc, state).
struct Instr {
  enum class Kind { Assign, Havoc, Assume, Error, Branch, Split, Jump, Halt };
  Kind kind = Kind::Halt;
  int var = -1;
  ExprPtr expr;
  int a = -1;  // branch: true target; split: first; jump: target
  int b = -1;  // branch: false target; split: second
  std::optional<int> origin;
};

struct Compiled {
  std::vector<Instr> code;
  std::vector<Ident> vars;
  std::unordered_map<std::string, int> var_index;
};

class Compiler {
 public:
  explicit Compiler(const Program& p) {
    for (const Ident& d : p.decls) {
      out_.var_index.emplace(d.name, static_cast<int>(out_.vars.size()));
      out_.vars.push_back(d);
    }
    block(p.body);
    emit(Instr{.kind = Instr::Kind::Halt, .var = -1, .expr = nullptr, .a = -1, .b = -1, .origin = {}});
  }

  Compiled take() { return std::move(out_); }

 private:
  int emit(Instr i) {
    out_.code.push_back(std::move(i));
    return static_cast<int>(out_.code.size() - 1);
  }
  int here() const { return static_cast<int>(out_.code.size()); }
  int var_of(const Ident& id) const { return out_.var_index.at(id.name); }

  void block(const Block& b) {
    for (const StmtPtr& s : b) stmt(*s);
  }

  void stmt(const Stmt& s) {
    std::visit(
        [&](const auto& x) {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, AssignStmt>) {
            emit(Instr{Instr::Kind::Assign, var_of(x.lhs), x.rhs, -1, -1,
                       s.origin});
          } else if constexpr (std::is_same_v<T, HavocStmt>) {
            emit(Instr{Instr::Kind::Havoc, var_of(x.target), nullptr, -1, -1,
                       s.origin});
          } else if constexpr (std::is_same_v<T, AssumeStmt>) {
            emit(Instr{Instr::Kind::Assume, -1, x.cond, -1, -1, s.origin});
          } else if constexpr (std::is_same_v<T, ErrorStmt>) {
            emit(Instr{Instr::Kind::Error, -1, nullptr, -1, -1, s.origin});
          } else if constexpr (std::is_same_v<T, IfCondStmt>) {
            const int br = emit(Instr{Instr::Kind::Branch, -1, x.cond, -1, -1,
                                      s.origin});
            out_.code[br].a = here();
            block(x.then_block);
            const int jump_out = emit(Instr{.kind = Instr::Kind::Jump, .var = -1, .expr = nullptr, .a = -1, .b = -1, .origin = {}});
            out_.code[br].b = here();
            block(x.else_block);
            out_.code[jump_out].a = here();
          } else if constexpr (std::is_same_v<T, IfNondetStmt>) {
            const int sp =
                emit(Instr{Instr::Kind::Split, -1, nullptr, -1, -1, s.origin});
            out_.code[sp].a = here();
            block(x.then_block);
            const int jump_out = emit(Instr{.kind = Instr::Kind::Jump, .var = -1, .expr = nullptr, .a = -1, .b = -1, .origin = {}});
            out_.code[sp].b = here();
            block(x.else_block);
            out_.code[jump_out].a = here();
          } else {  // WhileStmt
            const int head = emit(Instr{Instr::Kind::Branch, -1, x.cond, -1,
                                        -1, s.origin});
            out_.code[head].a = here();
            block(x.body);
            emit(Instr{Instr::Kind::Jump, -1, nullptr, head, -1, {}});
            out_.code[head].b = here();
          }
        },
        s.node);
  }

  Compiled out_;
};

struct NodeKey {
  int pc = 0;
  std::vector<std::int32_t> vals;
  bool operator==(const NodeKey&) const = default;
};

struct NodeKeyHash {
  std::size_t operator()(const NodeKey& k) const {
    std::size_t h = 1469598103934665603ull ^ static_cast<std::size_t>(k.pc);
    for (std::int32_t v : k.vals) {
      h ^= static_cast<std::size_t>(static_cast<std::uint32_t>(v));
      h *= 1099511628211ull;
    }
    return h;
  }
};

struct RunOutput {
  ReachResult result;
  std::vector<std::vector<std::int32_t>> terminal_states;
};

RunOutput run(const Compiled& prog, std::vector<std::int32_t> initial,
              const MachineConfig& cfg, std::size_t step_bound,
              const std::vector<int>& projection, bool collect_terminal) {
  RunOutput out;
  ReachResult& res = out.result;

  auto lookup_factory = [&](const std::vector<std::int32_t>& vals) {
    return [&prog, &vals](const Ident& id) -> std::int64_t {
      auto it = prog.var_index.find(id.name);
      if (it == prog.var_index.end()) {
        throw std::invalid_argument("reachable: unbound variable '" + id.name +
                                    "'");
      }
      return vals[static_cast<std::size_t>(it->second)];
    };
  };

  auto observe = [&](std::optional<int> origin,
                     const std::vector<std::int32_t>& vals) {
    if (!origin) return;
    Observation obs;
    obs.origin = *origin;
    obs.values.reserve(projection.size());
    for (int idx : projection) {
      obs.values.push_back(vals[static_cast<std::size_t>(idx)]);
    }
    res.observed.insert(std::move(obs));
  };

  std::unordered_set<NodeKey, NodeKeyHash> visited;
  std::deque<NodeKey> frontier;
  std::unordered_set<NodeKey, NodeKeyHash> terminal_seen;

  auto push = [&](int pc, std::vector<std::int32_t> vals) {
    NodeKey key{pc, std::move(vals)};
    if (visited.insert(key).second) frontier.push_back(std::move(key));
  };

  push(0, std::move(initial));

  while (!frontier.empty()) {
    if (res.steps >= step_bound) {
      res.exhausted = true;
      break;
    }
    ++res.steps;
    NodeKey node = std::move(frontier.front());
    frontier.pop_front();
    const Instr& ins = prog.code[static_cast<std::size_t>(node.pc)];
    auto lookup = lookup_factory(node.vals);

    auto eval_here = [&](const Expr& e) -> EvalResult {
      EvalResult r = detail::eval_with(e, lookup, cfg);
      if (r.is_fault()) {
        res.faults.insert(EvalFault{r.fault_kind(), ins.origin});
      }
      return r;
    };

    switch (ins.kind) {
      case Instr::Kind::Assign: {
        EvalResult v = eval_here(*ins.expr);
        if (v.is_fault()) break;
        std::vector<std::int32_t> next = node.vals;
        next[static_cast<std::size_t>(ins.var)] =
            static_cast<std::int32_t>(v.value());
        observe(ins.origin, next);
        push(node.pc + 1, std::move(next));
        break;
      }
      case Instr::Kind::Havoc: {
        for (std::int64_t v = cfg.min_value(); v <= cfg.max_value(); ++v) {
          std::vector<std::int32_t> next = node.vals;
          next[static_cast<std::size_t>(ins.var)] =
              static_cast<std::int32_t>(v);
          observe(ins.origin, next);
          push(node.pc + 1, std::move(next));
        }
        break;
      }
      case Instr::Kind::Assume: {
        EvalResult v = eval_here(*ins.expr);
        if (v.is_fault()) break;
        if (v.value() != 0) {
          observe(ins.origin, node.vals);
          push(node.pc + 1, std::move(node.vals));
        }
        break;
      }
      case Instr::Kind::Error: {
        res.error_reached = true;
        observe(ins.origin, node.vals);
        break;
      }
      case Instr::Kind::Branch: {
        EvalResult v = eval_here(*ins.expr);
        if (v.is_fault()) break;
        observe(ins.origin, node.vals);
        push(v.value() != 0 ? ins.a : ins.b, std::move(node.vals));
        break;
      }
      case Instr::Kind::Split: {
        observe(ins.origin, node.vals);
        push(ins.a, node.vals);
        push(ins.b, std::move(node.vals));
        break;
      }
      case Instr::Kind::Jump: {
        push(ins.a, std::move(node.vals));
        break;
      }
      case Instr::Kind::Halt: {
        if (collect_terminal &&
            terminal_seen.insert(NodeKey{0, node.vals}).second) {
          out.terminal_states.push_back(std::move(node.vals));
        }
        break;
      }
    }
  }
  return out;
}

std::vector<int> projection_indices(const Compiled& prog,
                                    const std::vector<Ident>& onto) {
  std::vector<int> idx;
  idx.reserve(onto.size());
  for (const Ident& id : onto) {
    auto it = prog.var_index.find(id.name);
    if (it == prog.var_index.end()) {
      throw std::invalid_argument("projection variable '" + id.name +
                                  "' is not declared");
    }
    idx.push_back(it->second);
  }
  return idx;
}

void check_config(const MachineConfig& cfg) {
  if (cfg.width < 2 || cfg.width > 16) {
    throw std::invalid_argument("machine width must be in [2, 16]");
  }
}

}  // namespace

ReachResult reachable(const Program& p, const MachineConfig& cfg,
                      std::size_t step_bound) {
  return reachable(p, cfg, step_bound, p.decls);
}

ReachResult reachable(const Program& p, const MachineConfig& cfg,
                      std::size_t step_bound,
                      const std::vector<Ident>& project_onto) {
  check_config(cfg);
  if (step_bound < 1) throw std::invalid_argument("step bound must be >= 1");
  std::string why;
  if (!well_formed(p, &why)) {
    throw std::invalid_argument("reachable: " + why);
  }
  Compiler c(p);
  Compiled prog = c.take();
  std::vector<std::int32_t> initial(prog.vars.size(), 0);
  RunOutput out = run(prog, std::move(initial), cfg, step_bound,
                      projection_indices(prog, project_onto), false);
  out.result.projected_vars = project_onto;
  return std::move(out.result);
}

StepResult exec_stmt(const Stmt& s, const State& sigma,
                     const MachineConfig& cfg, std::size_t step_bound) {
  check_config(cfg);
  Program p;
  for (const auto& [id, _] : sigma) p.decls.push_back(id);
  p.body.push_back(std::make_shared<const Stmt>(s));
  Compiler c(p);
  Compiled prog = c.take();
  std::vector<std::int32_t> initial(prog.vars.size(), 0);
  for (const auto& [id, v] : sigma) {
    initial[static_cast<std::size_t>(prog.var_index.at(id.name))] =
        static_cast<std::int32_t>(cfg.wrap(v));
  }
  RunOutput out = run(prog, std::move(initial), cfg, step_bound, {}, true);

  StepResult res;
  res.error = out.result.error_reached;
  res.faults.assign(out.result.faults.begin(), out.result.faults.end());
  for (const auto& vals : out.terminal_states) {
    State st;
    for (std::size_t i = 0; i < prog.vars.size(); ++i) {
      st[prog.vars[i]] = vals[i];
    }
    res.states.push_back(std::move(st));
  }
  return res;
}

std::string to_json(const ReachResult& r) {
  nlohmann::ordered_json j;
  j["error_reached"] = r.error_reached;
  j["exhausted"] = r.exhausted;
  j["fault_count"] = r.faults.size();
  j["observed_count"] = r.observed.size();
  return j.dump();
}

}  // namespace bitbranch
