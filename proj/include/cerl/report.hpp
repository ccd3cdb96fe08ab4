#pragma once

// JSON renderings of verdicts, termination reports and trace records,
// shared by the CLI and the tests.

#include <json.hpp>

#include "cerl/equiv.hpp"
#include "cerl/machine.hpp"

namespace cerl {

nlohmann::json to_json(const TerminationReport& r);
nlohmann::json to_json(const EquivVerdict& v);
/// {"step", "rule", "stack_depth", "redex_text"}
nlohmann::json to_json(const TraceEntry& e);
/// The record after the last step: rule is null, "outcome" is one of
/// "completed", "out_of_fuel", "stuck", and redex_text is the printed
/// result (or the redex the run stopped at).
nlohmann::json final_record(const RunOutcome& o);

}  // namespace cerl
