#pragma once

// Executable checks of the machine's metatheory and of the example
// programs. Each check returns pass/fail with a one-line summary and its
// wall time; a check over its time limit fails.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace cerl::props {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0;
  double limit_seconds = 0;  // 0: no limit
};

/// The length-guard function applied to [] and to 0, with rule-sequence
/// checks on both traces.
CheckResult golden_example();
/// At most one applicable rule on every enumerated small configuration.
CheckResult determinism(std::size_t min_configs = 10000);
/// <K1, r> ->n <e, res> implies <K1 ++ K', r> ->n <K', res> with the same rules.
CheckResult extend_stack(std::size_t runs = 500, std::uint64_t seed = 1);
/// <F :: K, e> terminates iff <K, F[e]> terminates.
CheckResult remove_add_frame(std::size_t cases = 500, std::uint64_t seed = 2);
/// <1> vs <2> is told apart with a replayable witness; every generated
/// redex is equivalent to itself.
CheckResult ciu_soundness(std::size_t redexes = 1000, std::uint64_t seed = 3);
/// Guard version equivalent to pattern version; swapped version is not.
CheckResult refactoring();
/// Related closure-free values are '==', unrelated ones are not, over an
/// enumerated set of at least `pairs` of each.
CheckResult values_equal(std::size_t pairs = 1000);
/// A case with no matching clause raises exactly {error, if_clause, {}}.
CheckResult exc_case();
/// parse(print(e)) == e over generated expressions.
CheckResult round_trip(std::size_t terms = 1000, std::uint64_t seed = 5);

struct Suite {
  std::string name;
  std::function<CheckResult()> run;
};

/// "golden": golden_example, exc_case. "props": the rest. "all": both,
/// in the order above.
std::vector<Suite> suites(const std::string& which);

}  // namespace cerl::props
