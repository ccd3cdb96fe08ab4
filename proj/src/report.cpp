#include "cerl/report.hpp"

#include "cerl/frontend.hpp"

namespace cerl {

namespace {

std::string_view status_name(Termination t) {
  switch (t) {
    case Termination::Terminates: return "terminates";
    case Termination::Stuck: return "stuck";
    case Termination::Unknown: return "unknown";
  }
  return "unknown";
}

}  // namespace

nlohmann::json to_json(const TerminationReport& r) {
  nlohmann::json j{{"status", status_name(r.status)}, {"steps", r.steps}};
  if (r.result) j["result"] = print(*r.result);
  if (!r.stuck_reason.empty()) j["stuck_reason"] = r.stuck_reason;
  return j;
}

nlohmann::json to_json(const EquivVerdict& v) {
  nlohmann::json j{
      {"verdict", verdict_name(v.kind)},
      {"trials", v.trials},
      {"unknown_trials", v.unknown_trials},
      {"substitutions", v.substitutions},
      {"stacks_per_substitution", v.stacks_per_substitution},
      {"seed", v.seed},
      {"fuel", v.fuel},
  };
  if (!v.reason.empty()) j["reason"] = v.reason;
  if (v.witness) {
    j["witness"] = {
        {"stack", print(v.witness->stack)},
        {"substitution", print(v.witness->subst)},
        {"left", to_json(v.witness->left)},
        {"right", to_json(v.witness->right)},
    };
  }
  return j;
}

nlohmann::json to_json(const TraceEntry& e) {
  return {{"step", e.index},
          {"rule", rule_name(e.rule)},
          {"stack_depth", e.before.stack.size()},
          {"redex_text", print(e.before.redex)}};
}

nlohmann::json final_record(const RunOutcome& o) {
  return std::visit(
      [](const auto& r) -> nlohmann::json {
        using T = std::decay_t<decltype(r)>;
        nlohmann::json j{{"step", r.steps}, {"rule", nullptr}};
        if constexpr (std::is_same_v<T, run::Completed>) {
          j["stack_depth"] = 0;
          j["redex_text"] = print(r.result);
          j["outcome"] = "completed";
        } else {
          j["stack_depth"] = r.at.stack.size();
          j["redex_text"] = print(r.at.redex);
          if constexpr (std::is_same_v<T, run::Stuck>) {
            j["outcome"] = "stuck";
            j["reason"] = r.reason;
          } else {
            j["outcome"] = "out_of_fuel";
          }
        }
        return j;
      },
      o);
}

}  // namespace cerl
