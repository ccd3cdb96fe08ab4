#pragma once

// Bounded CIU testing: two redexes are compared by running their closed
// instances in generated frame stacks. Termination is only
// semi-decidable, so every verdict carries the fuel and seed it used and
// fuel exhaustion is reported as Unknown, never as a pass.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cerl/ast.hpp"
#include "cerl/machine.hpp"
#include "cerl/subst.hpp"

namespace cerl {

struct EquivConfig {
  std::size_t fuel = 100000;
  int stack_depth_max = 2;
  int value_depth_max = 2;
  std::size_t num_stacks = 50;
  std::size_t num_substitutions = 100;
  std::uint64_t seed = 42;
};

enum class VerdictKind { Equivalent, Inequivalent, Unknown };

std::string_view verdict_name(VerdictKind k);

struct Witness {
  FrameStack stack;
  Substitution subst;
  TerminationReport left, right;
};

struct EquivVerdict {
  VerdictKind kind = VerdictKind::Equivalent;
  std::size_t trials = 0;
  std::size_t unknown_trials = 0;
  std::size_t substitutions = 0;
  std::size_t stacks_per_substitution = 0;
  std::uint64_t seed = 0;
  std::size_t fuel = 0;
  /// For Unknown: "fuel"; for Inequivalent: what differed.
  std::string reason;
  std::optional<Witness> witness;
};

/// r1 <=ciu r2 over closing substitutions for gamma.
EquivVerdict ciu_le(const Redex& r1, const Redex& r2, const NameSet& gamma,
                    const EquivConfig& cfg = {});

/// Both directions over one shared suite of substitutions and stacks.
EquivVerdict ciu_equiv(const Redex& r1, const Redex& r2, const NameSet& gamma,
                       const EquivConfig& cfg = {});

/// Re-runs a witness: <K, r1[s]> and <K, r2[s]>.
std::pair<TerminationReport, TerminationReport> replay(const Witness& w, const Redex& r1,
                                                       const Redex& r2, std::size_t fuel);

/// Results an empty stack can tell apart: sequence length, constructors,
/// integers, atoms, exception class. Closures are compared by probing, not
/// here, so two closures are never distinguishable by this test.
bool distinguishable(const Result& a, const Result& b);

/// Bounded structural value relation. Closures of equal arity are related
/// when applying both to sampled arguments co-terminates with related
/// results, recursing with depth_budget - 1; depth_budget 0 relates all
/// same-arity closures.
bool value_rel(const ValuePtr& a, const ValuePtr& b, int depth_budget,
               const EquivConfig& cfg = {});

struct ValuesEqualReport {
  std::size_t checked = 0;
  std::vector<std::pair<ValuePtr, ValuePtr>> counterexamples;
  bool ok() const { return counterexamples.empty(); }
};

/// bif_equal must be 'true' on every (closure-free) related pair.
ValuesEqualReport check_related_values_equal(const std::vector<std::pair<ValuePtr, ValuePtr>>& pairs);

/// The closing substitutions tried for gamma, in trial order. A fixed
/// list of small values comes first, then random ones (closures
/// included). Empty gamma gives the single empty substitution.
std::vector<Substitution> closing_substitutions(const NameSet& gamma, const EquivConfig& cfg);

}  // namespace cerl
