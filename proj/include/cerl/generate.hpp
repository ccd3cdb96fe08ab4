#pragma once

// Seeded random generators for values, patterns, expressions, frames and
// stacks. Used by the equivalence checker and the property suites.
//
// Expressions come out closed relative to the given scope and avoid
// recursion, so they terminate unless they get stuck on a binder arity.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "cerl/ast.hpp"
#include "cerl/machine.hpp"

namespace cerl {

class Generator {
 public:
  explicit Generator(std::uint64_t seed) : rng_(seed) {}

  std::size_t below(std::size_t n);
  bool chance(double p);
  std::mt19937_64& rng() { return rng_; }

  ValuePtr atom();
  ValuePtr small_int();
  ValuePtr value(int depth, bool closures = false);
  ValuePtr closure(std::size_t arity, int depth);

  PatternPtr pattern(int depth, std::vector<std::string>& bound);
  /// A pattern that v matches, with fresh variables in place of closures
  /// and, with probability p_var, of other subterms.
  PatternPtr pattern_for(const ValuePtr& v, double p_var);

  ExprPtr expr(int depth, const std::vector<std::string>& scope);
  /// Expressions whose printed form parses back to the same tree: no
  /// compound values or closures inside Val nodes, free variables allowed.
  ExprPtr source_expr(int depth);

  Frame frame(int depth);
  FrameStack stack(std::size_t max_frames, int depth);

  std::string fresh_var();

 private:
  ExprPtr leaf(const std::vector<std::string>& scope);
  std::vector<ExprPtr> exprs(std::size_t n, int depth, const std::vector<std::string>& scope);
  std::vector<Clause> clauses(std::size_t arity, int depth, const std::vector<std::string>& scope);
  ExprPtr bif_call(int depth, const std::vector<std::string>& scope);
  PatternPtr source_pattern(int depth);

  std::mt19937_64 rng_;
  std::size_t counter_ = 0;
};

}  // namespace cerl
