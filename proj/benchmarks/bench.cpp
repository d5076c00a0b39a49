#include <benchmark/benchmark.h>

#include "bitbranch/parse.hpp"
#include "bitbranch/reach.hpp"
#include "bitbranch/rule_check.hpp"
#include "bitbranch/transform.hpp"

namespace {

const char* kLoopProgram = R"(
var a; var x;
havoc a;
assume(a > 0);
havoc x;
while (x > 0) {
  a := a - 1;
  x := x & a;
}
)";

void BM_EvalExpr(benchmark::State& state) {
  using namespace bitbranch;
  const ExprPtr e = parse_expr("x >= 0 && (1 - x) == 1 ? x % 2 : x & (1 - x)");
  const MachineConfig cfg{8};
  State sigma{{Ident{"x"}, 5}};
  for (auto _ : state) {
    benchmark::DoNotOptimize(eval_expr(*e, sigma, cfg));
  }
}
BENCHMARK(BM_EvalExpr);

void BM_TransformLoop(benchmark::State& state) {
  using namespace bitbranch;
  const Program p = parse_program(kLoopProgram);
  for (auto _ : state) {
    benchmark::DoNotOptimize(transform_program(p));
  }
}
BENCHMARK(BM_TransformLoop);

void BM_ReachTransformedLoop(benchmark::State& state) {
  using namespace bitbranch;
  const Program p = transform_program(parse_program(kLoopProgram));
  const MachineConfig cfg{4};
  for (auto _ : state) {
    benchmark::DoNotOptimize(reachable(p, cfg, 100000));
  }
}
BENCHMARK(BM_ReachTransformedLoop);

void BM_CheckRuleWAndPos(benchmark::State& state) {
  using namespace bitbranch;
  const Rule* rule = find_rule(rule_catalog(), "W-And-Pos");
  const MachineConfig cfg{static_cast<int>(state.range(0))};
  for (auto _ : state) {
    benchmark::DoNotOptimize(check_rule_correctness(*rule, cfg));
  }
}
BENCHMARK(BM_CheckRuleWAndPos)->Arg(4)->Arg(6);

}  // namespace

BENCHMARK_MAIN();
