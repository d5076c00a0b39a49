#include "bitbranch/soundness.hpp"

#include <algorithm>

#include "bitbranch/print.hpp"
#include "bitbranch/progen.hpp"
#include "json.hpp"

namespace bitbranch {

std::string_view to_string(InclusionStatus s) {
  switch (s) {
    case InclusionStatus::Holds: return "holds";
    case InclusionStatus::Fails: return "fails";
    case InclusionStatus::Inconclusive: return "inconclusive";
  }
  return "?";
}

std::string_view to_string(SafetyClass c) {
  switch (c) {
    case SafetyClass::Safe: return "safe";
    case SafetyClass::TrueAlarm: return "true-alarm";
    case SafetyClass::SpuriousAlarm: return "spurious-alarm";
    case SafetyClass::Inconclusive: return "inconclusive";
  }
  return "?";
}

InclusionVerdict check_inclusion(const Program& p, const TransformOptions& opts,
                                 const MachineConfig& cfg,
                                 std::size_t step_bound,
                                 std::span<const Rule> catalog) {
  const Program tp = transform_program(p, opts, catalog);
  const ReachResult rp = reachable(p, cfg, step_bound);
  const ReachResult rt = reachable(tp, cfg, step_bound, p.decls);

  InclusionVerdict v;
  v.projected_vars = p.decls;
  v.observed_p = rp.observed.size();
  v.observed_t = rt.observed.size();
  v.error_p = rp.error_reached;
  v.error_t = rt.error_reached;
  v.exhausted_p = rp.exhausted;
  v.exhausted_t = rt.exhausted;

  for (const Observation& obs : rp.observed) {
    if (!rt.observed.count(obs)) {
      v.witness = obs;
      break;
    }
  }
  const bool error_monotone = !rp.error_reached || rt.error_reached;

  // A missing observation only disproves inclusion when the transformed
  // side reached fixpoint; Holds needs both sides complete.
  if (!rt.exhausted && v.witness) {
    v.status = InclusionStatus::Fails;
  } else if (!rp.exhausted && !rt.exhausted && !v.witness && error_monotone) {
    v.status = InclusionStatus::Holds;
  } else {
    v.status = InclusionStatus::Inconclusive;
  }
  return v;
}

namespace {

nlohmann::ordered_json observation_json(const Observation& obs,
                                        const std::vector<Ident>& vars) {
  nlohmann::ordered_json state = nlohmann::ordered_json::object();
  for (std::size_t i = 0; i < vars.size() && i < obs.values.size(); ++i) {
    state[vars[i].name] = obs.values[i];
  }
  nlohmann::ordered_json j;
  j["origin"] = obs.origin;
  j["state"] = state;
  return j;
}

}  // namespace

std::string to_json(const InclusionVerdict& v) {
  nlohmann::ordered_json j;
  j["status"] = std::string(to_string(v.status));
  j["holds"] = v.holds();
  if (v.witness) {
    j["witness"] = observation_json(*v.witness, v.projected_vars);
  } else {
    j["witness"] = nullptr;
  }
  j["observed_p"] = v.observed_p;
  j["observed_t"] = v.observed_t;
  j["error_p"] = v.error_p;
  j["error_t"] = v.error_t;
  j["exhausted_p"] = v.exhausted_p;
  j["exhausted_t"] = v.exhausted_t;
  return j.dump();
}

SafetyReport certify_safety(const Program& p, const TransformOptions& opts,
                            const MachineConfig& cfg, std::size_t step_bound,
                            std::span<const Rule> catalog) {
  const Program tp = transform_program(p, opts, catalog);
  const ReachResult rt = reachable(tp, cfg, step_bound, p.decls);

  SafetyReport r;
  r.width = cfg.width;
  r.step_bound = step_bound;
  r.error_t = rt.error_reached;
  r.exhausted_t = rt.exhausted;

  if (!rt.error_reached && !rt.exhausted) {
    r.classification = SafetyClass::Safe;
    r.message = "P safe at width " + std::to_string(cfg.width) +
                " (certified via over-approximation)";
    return r;
  }
  if (!rt.error_reached) {
    r.classification = SafetyClass::Inconclusive;
    r.message = "bound exhausted before fixpoint on T(P)";
    return r;
  }

  const ReachResult rp = reachable(p, cfg, step_bound);
  r.error_p = rp.error_reached;
  r.exhausted_p = rp.exhausted;
  if (rp.error_reached) {
    r.classification = SafetyClass::TrueAlarm;
    r.message = "error reachable in P (true alarm at width " +
                std::to_string(cfg.width) + ")";
  } else if (!rp.exhausted) {
    r.classification = SafetyClass::SpuriousAlarm;
    r.message = "error reachable only in T(P): spurious alarm from "
                "over-approximation";
  } else {
    r.classification = SafetyClass::Inconclusive;
    r.message = "bound exhausted before fixpoint on P";
  }
  return r;
}

std::string to_json(const SafetyReport& r) {
  nlohmann::ordered_json j;
  j["classification"] = std::string(to_string(r.classification));
  j["width"] = r.width;
  j["bound"] = r.step_bound;
  j["error_t"] = r.error_t;
  j["error_p"] = r.error_p;
  j["exhausted_t"] = r.exhausted_t;
  j["exhausted_p"] = r.exhausted_p;
  j["message"] = r.message;
  return j.dump();
}

FuzzResult fuzz_inclusion(std::uint64_t seed, int count,
                          const MachineConfig& cfg, std::size_t step_bound) {
  FuzzResult res;
  const TransformOptions opts;
  for (int i = 0; i < count; ++i) {
    const std::uint64_t program_seed =
        seed * 0x9e3779b97f4a7c15ull + static_cast<std::uint64_t>(i);
    const Program p = random_program(program_seed, cfg);
    const InclusionVerdict v = check_inclusion(p, opts, cfg, step_bound);
    ++res.checked;
    if (!v.exhausted_p && !v.exhausted_t) ++res.error_monotonicity_checked;

    switch (v.status) {
      case InclusionStatus::Holds:
        ++res.holds;
        break;
      case InclusionStatus::Inconclusive:
        ++res.inconclusive;
        break;
      case InclusionStatus::Fails: {
        // Replay the witness through fresh runs before believing it.
        const Program tp = transform_program(p, opts);
        const ReachResult rp = reachable(p, cfg, step_bound);
        const ReachResult rt = reachable(tp, cfg, step_bound, p.decls);
        FuzzFailure f;
        f.program_seed = program_seed;
        f.program_text = pretty_print(p);
        f.witness = v.witness;
        const bool replayed = v.witness && rp.observed.count(*v.witness) &&
                              !rt.observed.count(*v.witness) && !rt.exhausted;
        const bool error_miss =
            rp.error_reached && !rt.error_reached && !rt.exhausted;
        if (replayed) {
          f.kind = error_miss ? "error-monotonicity" : "inclusion";
        } else {
          f.kind = "unreplayable-witness";
        }
        res.failures.push_back(std::move(f));
        break;
      }
    }
  }
  return res;
}

std::string to_json(const FuzzResult& r) {
  nlohmann::ordered_json j;
  j["checked"] = r.checked;
  j["holds"] = r.holds;
  j["inconclusive"] = r.inconclusive;
  j["error_monotonicity_checked"] = r.error_monotonicity_checked;
  nlohmann::ordered_json failures = nlohmann::ordered_json::array();
  for (const FuzzFailure& f : r.failures) {
    nlohmann::ordered_json fj;
    fj["seed"] = f.program_seed;
    fj["kind"] = f.kind;
    fj["program"] = f.program_text;
    if (f.witness) {
      nlohmann::ordered_json w;
      w["origin"] = f.witness->origin;
      w["values"] = f.witness->values;
      fj["witness"] = w;
    }
    failures.push_back(fj);
  }
  j["failures"] = failures;
  return j.dump();
}

}  // namespace bitbranch
