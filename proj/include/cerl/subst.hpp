#pragma once

// Parallel substitutions from names to closed values.
//
// Every substitution the machine performs inserts closed values only
// (pattern-match results, closure lists, parameter values), so variable
// capture cannot happen and no renaming is needed. apply() checks the
// closedness of the range instead.

#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "cerl/ast.hpp"

namespace cerl {

using Substitution = std::map<Name, ValuePtr>;

class OpenSubstitutionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// r[s]. Names outside dom(s) are left in place; binders shadow.
/// Throws OpenSubstitutionError if a range value has free names.
Redex apply(const Redex& r, const Substitution& s);
ExprPtr apply(const ExprPtr& e, const Substitution& s);
ValuePtr apply(const ValuePtr& v, const Substitution& s);

/// Right-biased union: bindings in `more` override those in `s`, and
/// later entries of `more` override earlier ones.
Substitution compose_update(Substitution s,
                            const std::vector<std::pair<Name, ValuePtr>>& more);

/// gamma |- s -o {} : dom(s) covers gamma and every range value is closed.
bool subscoped(const NameSet& gamma, const Substitution& s);

}  // namespace cerl
