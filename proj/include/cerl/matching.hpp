#pragma once

// Clause selection: pattern variables, the is_match decision and the
// binding-producing match.
//
// Repeated variables: the first occurrence binds, later occurrences must
// be structurally equal to it. Map patterns need ground keys and match
// when the map holds at least the listed keys.

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cerl/ast.hpp"
#include "cerl/subst.hpp"

namespace cerl {

std::set<std::string> vars(const Pattern& p);
std::set<std::string> vars(const std::vector<PatternPtr>& ps);

/// Ground patterns denote a value; nullptr if p has variables.
ValuePtr pattern_value(const Pattern& p);

bool is_match(const std::vector<PatternPtr>& ps, const ValueSeq& vs);

/// std::nullopt is NoMatch.
std::optional<Substitution> match(const std::vector<PatternPtr>& ps,
                                  const ValueSeq& vs);

}  // namespace cerl
