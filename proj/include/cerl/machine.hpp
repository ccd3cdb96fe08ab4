#pragma once

// The frame stack machine: frames, configurations, the one-step
// reduction relation, fuel-bounded evaluation and termination.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "cerl/ast.hpp"
#include "cerl/subst.hpp"

namespace cerl {

// ---------------------------------------------------------------------------
// Frame identifiers for parameter-list frames

namespace frame_id {
struct Tuple {};
struct Values {};
struct Map {};
struct PrimOp { std::string name; };
struct Call { ValuePtr module, function; };
struct App { ValuePtr function; };
}  // namespace frame_id

using FrameId = std::variant<frame_id::Tuple, frame_id::Values, frame_id::Map,
                             frame_id::PrimOp, frame_id::Call, frame_id::App>;

// ---------------------------------------------------------------------------
// Frames: an expression with one hole

namespace frame {
/// id(done..., hole, todo...)
struct Params {
  FrameId id;
  std::vector<ValuePtr> done;
  std::vector<ExprPtr> todo;
};
/// [head | hole]
struct ConsTail { ExprPtr head; };
/// [hole | tail]
struct ConsHead { ValuePtr tail; };
/// call hole:function(args)
struct CallModule {
  ExprPtr function;
  std::vector<ExprPtr> args;
};
/// call module:hole(args)
struct CallFunction {
  ValuePtr module;
  std::vector<ExprPtr> args;
};
/// apply hole(args)
struct AppFn { std::vector<ExprPtr> args; };
/// case hole of clauses end
struct CaseScrutinee { std::vector<Clause> clauses; };
/// case scrutinee of patterns when hole -> body; rest end
///
/// `body` already carries the match bindings, so the guard's result alone
/// decides between it and `rest`.
struct CaseGuard {
  ValueSeq scrutinee;
  std::vector<PatternPtr> patterns;
  ExprPtr body;
  std::vector<Clause> rest;
};
/// let <vars> = hole in body
struct LetBind {
  std::vector<std::string> vars;
  ExprPtr body;
};
/// do hole second
struct SeqFirst { ExprPtr second; };
/// try hole of <vars> -> on_value catch <catch_vars> -> on_exception
struct TryFirst {
  std::vector<std::string> vars;
  ExprPtr on_value;
  std::vector<std::string> catch_vars;
  ExprPtr on_exception;
};
}  // namespace frame

using Frame = std::variant<frame::Params, frame::ConsTail, frame::ConsHead,
                           frame::CallModule, frame::CallFunction, frame::AppFn,
                           frame::CaseScrutinee, frame::CaseGuard, frame::LetBind,
                           frame::SeqFirst, frame::TryFirst>;

/// A stack of frames. Indexing is top-first; storage keeps the top at the
/// back so push and pop are O(1).
class FrameStack {
 public:
  FrameStack() = default;
  /// Builds a stack from frames listed top first.
  static FrameStack from_top_first(std::vector<Frame> frames);

  bool empty() const { return frames_.empty(); }
  std::size_t size() const { return frames_.size(); }
  const Frame& top() const { return frames_.back(); }
  /// i = 0 is the top frame.
  const Frame& at(std::size_t i) const { return frames_[frames_.size() - 1 - i]; }

  void push(Frame f) { frames_.push_back(std::move(f)); }
  void pop() { frames_.pop_back(); }

  std::vector<Frame> top_first() const;
  const std::vector<Frame>& bottom_first() const { return frames_; }

 private:
  std::vector<Frame> frames_;
};

struct Configuration {
  FrameStack stack;
  Redex redex;
};

bool equal(const FrameId& a, const FrameId& b);
bool equal(const Frame& a, const Frame& b);
bool equal(const FrameStack& a, const FrameStack& b);
bool equal(const Configuration& a, const Configuration& b);

// ---------------------------------------------------------------------------
// Reduction rules

enum class Rule {
  // Expressions decomposed onto the stack.
  SConsTail, SLet, SSeq, SApp, SCallMod, SPrimOp, SVals, STuple, SMap, SCase,
  // Top frame updated with a computed value.
  SConsHead, SCallFun, SCallParam, SAppParam, SCaseFail, SCaseSuccess,
  SCaseFalse, SParams0, SParams,
  // Top frame consumed, or an expression reduced in place.
  PMap0, PFun, PLetRec, PValue, PParams0, PParams, PCons, PCaseTrue, PLet, PSeq,
  // Exceptions.
  ExcCase, STry, PTry, ExcTry, ExcProp,
};

inline constexpr std::size_t kRuleCount = static_cast<std::size_t>(Rule::ExcProp) + 1;

std::string_view rule_name(Rule r);
std::optional<Rule> rule_from_name(std::string_view name);
std::vector<Rule> all_rules();

namespace outcome {
struct Stepped {
  Rule rule;
  Configuration next;
};
struct Final { Result result; };
struct Stuck { std::string reason; };
}  // namespace outcome

using StepOutcome = std::variant<outcome::Stepped, outcome::Final, outcome::Stuck>;

/// One reduction step. Final when the stack is empty and the redex is a
/// result; Stuck when no rule applies.
StepOutcome step(const Configuration& c);

/// The rules whose side conditions hold on c, each checked on its own.
/// step() is deterministic iff this never has more than one element.
std::vector<Rule> applicable_rules(const Configuration& c);

// ---------------------------------------------------------------------------
// Multi-step evaluation

struct TraceEntry {
  std::size_t index;
  Rule rule;
  Configuration before;
};
using Trace = std::vector<TraceEntry>;

namespace run {
struct Completed {
  Result result;
  std::size_t steps;
};
struct OutOfFuel {
  Configuration at;
  std::size_t steps;
};
struct Stuck {
  std::string reason;
  Configuration at;
  std::size_t steps;
};
}  // namespace run

using RunOutcome = std::variant<run::Completed, run::OutOfFuel, run::Stuck>;

/// Applies step() at most `fuel` times. A configuration that is already
/// final completes with zero steps.
RunOutcome eval_star(Configuration c, std::size_t fuel, Trace* trace = nullptr);

enum class Termination { Terminates, Stuck, Unknown };

struct TerminationReport {
  Termination status = Termination::Unknown;
  /// Steps taken; for Terminates this is the n of <K, r> terminating in n.
  std::size_t steps = 0;
  std::optional<Result> result;
  std::string stuck_reason;

  bool terminated() const { return status == Termination::Terminates; }
};

/// Unknown means the fuel ran out before a final configuration.
TerminationReport terminates(const FrameStack& k, const Redex& r, std::size_t fuel);

// ---------------------------------------------------------------------------
// Auxiliary definitions

/// Maps each f/k of ext to clos(ext, params, body).
Substitution mk_closlist(const Ext& ext);

/// F[e]. Syntactic hole replacement, except for CaseGuard frames whose
/// bindings are already substituted; see plug() in machine.cpp.
ExprPtr plug(const Frame& f, const ExprPtr& e);

/// F is closed when plugging a closed expression yields a closed one.
bool frame_closed(const Frame& f);
bool stack_closed(const FrameStack& k);

/// `top` placed above `bottom`.
FrameStack stack_concat(const FrameStack& top, const FrameStack& bottom);

}  // namespace cerl
