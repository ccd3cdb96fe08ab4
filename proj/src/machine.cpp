#include "cerl/machine.hpp"

#include <array>
#include <stdexcept>
#include <utility>

#include "cerl/builtins.hpp"
#include "cerl/matching.hpp"

namespace cerl {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

constexpr std::array<std::string_view, kRuleCount> kRuleNames = {
    "SConsTail", "SLet", "SSeq", "SApp", "SCallMod", "SPrimOp", "SVals", "STuple", "SMap", "SCase",
    "SConsHead", "SCallFun", "SCallParam", "SAppParam", "SCaseFail", "SCaseSuccess", "SCaseFalse",
    "SParams0", "SParams",
    "PMap0", "PFun", "PLetRec", "PValue", "PParams0", "PParams", "PCons", "PCaseTrue", "PLet", "PSeq",
    "ExcCase", "STry", "PTry", "ExcTry", "ExcProp",
};

bool equal_seq(const std::vector<ValuePtr>& a, const std::vector<ValuePtr>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!equal(a[i], b[i])) return false;
  }
  return true;
}

bool equal_exprs(const std::vector<ExprPtr>& a, const std::vector<ExprPtr>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!equal(a[i], b[i])) return false;
  }
  return true;
}

bool equal_clauses(const std::vector<Clause>& a, const std::vector<Clause>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (compare(a[i], b[i]) != 0) return false;
  }
  return true;
}

bool equal_patterns(const std::vector<PatternPtr>& a, const std::vector<PatternPtr>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!equal(a[i], b[i])) return false;
  }
  return true;
}

const ValueSeq* as_seq(const Redex& r) { return std::get_if<ValueSeq>(&r); }

/// The single value of a one-element sequence redex.
const ValuePtr* singleton(const Redex& r) {
  const ValueSeq* vs = as_seq(r);
  return (vs && vs->size() == 1) ? &(*vs)[0] : nullptr;
}

bool is_atom(const ValuePtr& v, std::string_view name) {
  const auto* a = std::get_if<val::Atom>(&v->node);
  return a && a->name == name;
}

Substitution bind_vars(const std::vector<std::string>& vars, const ValueSeq& vs) {
  std::vector<std::pair<Name, ValuePtr>> binds;
  for (std::size_t i = 0; i < vars.size(); ++i) binds.emplace_back(Var{vars[i]}, vs[i]);
  return compose_update({}, binds);
}

std::vector<ExprPtr> value_exprs(const std::vector<ValuePtr>& vs) {
  std::vector<ExprPtr> out;
  out.reserve(vs.size());
  for (const auto& v : vs) out.push_back(expr::val(v));
  return out;
}

struct Failure {
  std::string reason;
};

// The state after one step, computed in place. Returns the rule fired,
// or Failure / the final result.
using InPlace = std::variant<Rule, outcome::Final, Failure>;

InPlace reduce_expr(Configuration& c, const ExprPtr& e) {
  return std::visit(
      overloaded{
          [&](const ValuePtr& v) -> InPlace {
            c.redex = ValueSeq{v};
            return Rule::PValue;
          },
          [&](const expr::Fun& f) -> InPlace {
            c.redex = ValueSeq{val::closure({}, f.params, f.body)};
            return Rule::PFun;
          },
          [&](const expr::Values& v) -> InPlace {
            c.stack.push(frame::Params{frame_id::Values{}, {}, v.elems});
            c.redex = Box{};
            return Rule::SVals;
          },
          [&](const expr::Cons& x) -> InPlace {
            c.stack.push(frame::ConsTail{x.head});
            c.redex = x.tail;
            return Rule::SConsTail;
          },
          [&](const expr::Tuple& t) -> InPlace {
            c.stack.push(frame::Params{frame_id::Tuple{}, {}, t.elems});
            c.redex = Box{};
            return Rule::STuple;
          },
          [&](const expr::Map& m) -> InPlace {
            if (m.pairs.empty()) {
              c.redex = ValueSeq{val::map({})};
              return Rule::PMap0;
            }
            std::vector<ExprPtr> todo;
            todo.push_back(m.pairs[0].second);
            for (std::size_t i = 1; i < m.pairs.size(); ++i) {
              todo.push_back(m.pairs[i].first);
              todo.push_back(m.pairs[i].second);
            }
            ExprPtr first_key = m.pairs[0].first;
            c.stack.push(frame::Params{frame_id::Map{}, {}, std::move(todo)});
            c.redex = std::move(first_key);
            return Rule::SMap;
          },
          [&](const expr::Call& x) -> InPlace {
            c.stack.push(frame::CallModule{x.function, x.args});
            c.redex = x.module;
            return Rule::SCallMod;
          },
          [&](const expr::PrimOp& p) -> InPlace {
            c.stack.push(frame::Params{frame_id::PrimOp{p.name}, {}, p.args});
            c.redex = Box{};
            return Rule::SPrimOp;
          },
          [&](const expr::Apply& a) -> InPlace {
            c.stack.push(frame::AppFn{a.args});
            c.redex = a.function;
            return Rule::SApp;
          },
          [&](const expr::Case& x) -> InPlace {
            c.stack.push(frame::CaseScrutinee{x.clauses});
            c.redex = x.scrutinee;
            return Rule::SCase;
          },
          [&](const expr::Let& l) -> InPlace {
            c.stack.push(frame::LetBind{l.vars, l.body});
            c.redex = l.bound;
            return Rule::SLet;
          },
          [&](const expr::Seq& s) -> InPlace {
            c.stack.push(frame::SeqFirst{s.second});
            c.redex = s.first;
            return Rule::SSeq;
          },
          [&](const expr::LetRec& l) -> InPlace {
            c.redex = cerl::apply(l.body, mk_closlist(l.ext));
            return Rule::PLetRec;
          },
          [&](const expr::Try& t) -> InPlace {
            c.stack.push(frame::TryFirst{t.vars, t.on_value, t.catch_vars, t.on_exception});
            c.redex = t.body;
            return Rule::STry;
          },
      },
      e->node);
}

InPlace reduce_exception(Configuration& c, const Exception& exc) {
  if (c.stack.empty()) return outcome::Final{exc};
  if (const auto* t = std::get_if<frame::TryFirst>(&c.stack.top())) {
    if (t->catch_vars.size() != 3) return Failure{"catch binds " + std::to_string(t->catch_vars.size()) + " variables, expected 3"};
    ValueSeq bound{val::atom(std::string(exc_class_name(exc.cls))), exc.reason, exc.details};
    ExprPtr next = cerl::apply(t->on_exception, bind_vars(t->catch_vars, bound));
    c.stack.pop();
    c.redex = std::move(next);
    return Rule::ExcTry;
  }
  c.stack.pop();
  return Rule::ExcProp;
}

InPlace reduce_box(Configuration& c) {
  if (c.stack.empty()) return Failure{"box redex on an empty stack"};
  auto* p = std::get_if<frame::Params>(&c.stack.top());
  if (!p) return Failure{"box redex under a non-parameter frame"};
  if (std::holds_alternative<frame_id::Map>(p->id)) return Failure{"box redex under a map frame"};
  if (p->todo.empty()) {
    frame::Params done = std::move(*p);
    c.stack.pop();
    c.redex = eval(done.id, done.done);
    return Rule::PParams0;
  }
  if (!p->done.empty()) return Failure{"box redex under a partially evaluated parameter frame"};
  frame::Params next{p->id, {}, std::vector<ExprPtr>(p->todo.begin() + 1, p->todo.end())};
  ExprPtr first = p->todo.front();
  c.stack.pop();
  c.stack.push(std::move(next));
  c.redex = std::move(first);
  return Rule::SParams0;
}

InPlace reduce_values(Configuration& c, const ValueSeq& vs) {
  if (c.stack.empty()) return outcome::Final{vs};
  Frame top = c.stack.top();
  const ValuePtr* one = vs.size() == 1 ? &vs[0] : nullptr;
  auto need_single = [&](std::string_view what) {
    return Failure{std::string(what) + " expects a single value, got " + std::to_string(vs.size())};
  };
  return std::visit(
      overloaded{
          [&](const frame::Params& p) -> InPlace {
            if (!one) return need_single("parameter list");
            if (p.todo.empty()) {
              bool is_map = std::holds_alternative<frame_id::Map>(p.id);
              if (is_map && (p.done.size() + 1) % 2 != 0) return Failure{"map frame with an odd number of items"};
              std::vector<ValuePtr> args = p.done;
              args.push_back(*one);
              c.stack.pop();
              c.redex = eval(p.id, args);
              return Rule::PParams;
            }
            frame::Params next{p.id, p.done, std::vector<ExprPtr>(p.todo.begin() + 1, p.todo.end())};
            next.done.push_back(*one);
            c.stack.pop();
            c.stack.push(std::move(next));
            c.redex = p.todo.front();
            return Rule::SParams;
          },
          [&](const frame::ConsTail& f) -> InPlace {
            if (!one) return need_single("list tail");
            c.stack.pop();
            c.stack.push(frame::ConsHead{*one});
            c.redex = f.head;
            return Rule::SConsHead;
          },
          [&](const frame::ConsHead& f) -> InPlace {
            if (!one) return need_single("list head");
            c.stack.pop();
            c.redex = ValueSeq{val::cons(*one, f.tail)};
            return Rule::PCons;
          },
          [&](const frame::CallModule& f) -> InPlace {
            if (!one) return need_single("call module");
            c.stack.pop();
            c.stack.push(frame::CallFunction{*one, f.args});
            c.redex = f.function;
            return Rule::SCallFun;
          },
          [&](const frame::CallFunction& f) -> InPlace {
            if (!one) return need_single("call function");
            c.stack.pop();
            c.stack.push(frame::Params{frame_id::Call{f.module, *one}, {}, f.args});
            c.redex = Box{};
            return Rule::SCallParam;
          },
          [&](const frame::AppFn& f) -> InPlace {
            if (!one) return need_single("applied function");
            c.stack.pop();
            c.stack.push(frame::Params{frame_id::App{*one}, {}, f.args});
            c.redex = Box{};
            return Rule::SAppParam;
          },
          [&](const frame::CaseScrutinee& f) -> InPlace {
            c.stack.pop();
            if (f.clauses.empty()) {
              c.redex = if_clause_exception();
              return Rule::ExcCase;
            }
            const Clause& first = f.clauses.front();
            std::vector<Clause> rest(f.clauses.begin() + 1, f.clauses.end());
            if (auto s = match(first.patterns, vs)) {
              c.stack.push(frame::CaseGuard{vs, first.patterns, cerl::apply(first.body, *s), std::move(rest)});
              c.redex = cerl::apply(first.guard, *s);
              return Rule::SCaseSuccess;
            }
            c.stack.push(frame::CaseScrutinee{std::move(rest)});
            return Rule::SCaseFail;
          },
          [&](const frame::CaseGuard& f) -> InPlace {
            if (one && is_atom(*one, "true")) {
              c.stack.pop();
              c.redex = f.body;
              return Rule::PCaseTrue;
            }
            if (one && is_atom(*one, "false")) {
              c.stack.pop();
              c.stack.push(frame::CaseScrutinee{f.rest});
              c.redex = f.scrutinee;
              return Rule::SCaseFalse;
            }
            return Failure{"guard did not evaluate to 'true' or 'false'"};
          },
          [&](const frame::LetBind& f) -> InPlace {
            if (f.vars.size() != vs.size()) {
              return Failure{"let binds " + std::to_string(f.vars.size()) + " variables to " +
                             std::to_string(vs.size()) + " values"};
            }
            c.stack.pop();
            c.redex = cerl::apply(f.body, bind_vars(f.vars, vs));
            return Rule::PLet;
          },
          [&](const frame::SeqFirst& f) -> InPlace {
            if (!one) return need_single("sequence");
            c.stack.pop();
            c.redex = f.second;
            return Rule::PSeq;
          },
          [&](const frame::TryFirst& f) -> InPlace {
            if (f.vars.size() != vs.size()) {
              return Failure{"try binds " + std::to_string(f.vars.size()) + " variables to " +
                             std::to_string(vs.size()) + " values"};
            }
            c.stack.pop();
            c.redex = cerl::apply(f.on_value, bind_vars(f.vars, vs));
            return Rule::PTry;
          },
      },
      top);
}

InPlace reduce(Configuration& c) {
  Redex r = c.redex;
  return std::visit(
      overloaded{
          [&](const ExprPtr& e) { return reduce_expr(c, e); },
          [&](const ValueSeq& vs) { return reduce_values(c, vs); },
          [&](const Exception& exc) { return reduce_exception(c, exc); },
          [&](const Box&) { return reduce_box(c); },
      },
      r);
}

// Side conditions of each rule, stated independently of reduce().

const Frame* top_frame(const Configuration& c) { return c.stack.empty() ? nullptr : &c.stack.top(); }

template <class F>
const F* top_as(const Configuration& c) {
  const Frame* f = top_frame(c);
  return f ? std::get_if<F>(f) : nullptr;
}

template <class N>
bool redex_expr_is(const Configuration& c) {
  const auto* e = std::get_if<ExprPtr>(&c.redex);
  return e && std::holds_alternative<N>((*e)->node);
}

bool redex_is_box(const Configuration& c) { return std::holds_alternative<Box>(c.redex); }

bool params_with(const Configuration& c, bool want_map) {
  const auto* p = top_as<frame::Params>(c);
  return p && std::holds_alternative<frame_id::Map>(p->id) == want_map;
}

bool rule_applies(Rule rule, const Configuration& c) {
  switch (rule) {
    case Rule::SConsTail: return redex_expr_is<expr::Cons>(c);
    case Rule::SLet: return redex_expr_is<expr::Let>(c);
    case Rule::SSeq: return redex_expr_is<expr::Seq>(c);
    case Rule::SApp: return redex_expr_is<expr::Apply>(c);
    case Rule::SCallMod: return redex_expr_is<expr::Call>(c);
    case Rule::SPrimOp: return redex_expr_is<expr::PrimOp>(c);
    case Rule::SVals: return redex_expr_is<expr::Values>(c);
    case Rule::STuple: return redex_expr_is<expr::Tuple>(c);
    case Rule::SMap: {
      const auto* e = std::get_if<ExprPtr>(&c.redex);
      const auto* m = e ? std::get_if<expr::Map>(&(*e)->node) : nullptr;
      return m && !m->pairs.empty();
    }
    case Rule::SCase: return redex_expr_is<expr::Case>(c);
    case Rule::SConsHead: return top_as<frame::ConsTail>(c) && singleton(c.redex);
    case Rule::SCallFun: return top_as<frame::CallModule>(c) && singleton(c.redex);
    case Rule::SCallParam: return top_as<frame::CallFunction>(c) && singleton(c.redex);
    case Rule::SAppParam: return top_as<frame::AppFn>(c) && singleton(c.redex);
    case Rule::SCaseFail: {
      const auto* f = top_as<frame::CaseScrutinee>(c);
      const ValueSeq* vs = as_seq(c.redex);
      return f && vs && !f->clauses.empty() && !is_match(f->clauses.front().patterns, *vs);
    }
    case Rule::SCaseSuccess: {
      const auto* f = top_as<frame::CaseScrutinee>(c);
      const ValueSeq* vs = as_seq(c.redex);
      return f && vs && !f->clauses.empty() && is_match(f->clauses.front().patterns, *vs);
    }
    case Rule::SCaseFalse: {
      const ValuePtr* v = singleton(c.redex);
      return top_as<frame::CaseGuard>(c) && v && is_atom(*v, "false");
    }
    case Rule::SParams0: {
      const auto* p = top_as<frame::Params>(c);
      return redex_is_box(c) && params_with(c, false) && p->done.empty() && !p->todo.empty();
    }
    case Rule::SParams: {
      const auto* p = top_as<frame::Params>(c);
      return p && singleton(c.redex) && !p->todo.empty();
    }
    case Rule::PMap0: {
      const auto* e = std::get_if<ExprPtr>(&c.redex);
      const auto* m = e ? std::get_if<expr::Map>(&(*e)->node) : nullptr;
      return m && m->pairs.empty();
    }
    case Rule::PFun: return redex_expr_is<expr::Fun>(c);
    case Rule::PLetRec: return redex_expr_is<expr::LetRec>(c);
    case Rule::PValue: return redex_expr_is<ValuePtr>(c);
    case Rule::PParams0: {
      const auto* p = top_as<frame::Params>(c);
      return redex_is_box(c) && params_with(c, false) && p->todo.empty();
    }
    case Rule::PParams: {
      const auto* p = top_as<frame::Params>(c);
      if (!p || !singleton(c.redex) || !p->todo.empty()) return false;
      return !std::holds_alternative<frame_id::Map>(p->id) || p->done.size() % 2 == 1;
    }
    case Rule::PCons: return top_as<frame::ConsHead>(c) && singleton(c.redex);
    case Rule::PCaseTrue: {
      const ValuePtr* v = singleton(c.redex);
      return top_as<frame::CaseGuard>(c) && v && is_atom(*v, "true");
    }
    case Rule::PLet: {
      const auto* f = top_as<frame::LetBind>(c);
      const ValueSeq* vs = as_seq(c.redex);
      return f && vs && vs->size() == f->vars.size();
    }
    case Rule::PSeq: return top_as<frame::SeqFirst>(c) && singleton(c.redex);
    case Rule::ExcCase: {
      const auto* f = top_as<frame::CaseScrutinee>(c);
      return f && as_seq(c.redex) && f->clauses.empty();
    }
    case Rule::STry: return redex_expr_is<expr::Try>(c);
    case Rule::PTry: {
      const auto* f = top_as<frame::TryFirst>(c);
      const ValueSeq* vs = as_seq(c.redex);
      return f && vs && vs->size() == f->vars.size();
    }
    case Rule::ExcTry: {
      const auto* f = top_as<frame::TryFirst>(c);
      return f && std::holds_alternative<Exception>(c.redex) && f->catch_vars.size() == 3;
    }
    case Rule::ExcProp:
      return top_frame(c) && !top_as<frame::TryFirst>(c) && std::holds_alternative<Exception>(c.redex);
  }
  return false;
}

}  // namespace

FrameStack FrameStack::from_top_first(std::vector<Frame> frames) {
  FrameStack k;
  for (auto it = frames.rbegin(); it != frames.rend(); ++it) k.frames_.push_back(std::move(*it));
  return k;
}

std::vector<Frame> FrameStack::top_first() const { return {frames_.rbegin(), frames_.rend()}; }

bool equal(const FrameId& a, const FrameId& b) {
  if (a.index() != b.index()) return false;
  return std::visit(
      overloaded{
          [&](const frame_id::PrimOp& x) { return x.name == std::get<frame_id::PrimOp>(b).name; },
          [&](const frame_id::Call& x) {
            const auto& y = std::get<frame_id::Call>(b);
            return equal(x.module, y.module) && equal(x.function, y.function);
          },
          [&](const frame_id::App& x) { return equal(x.function, std::get<frame_id::App>(b).function); },
          [](const auto&) { return true; },
      },
      a);
}

bool equal(const Frame& a, const Frame& b) {
  if (a.index() != b.index()) return false;
  return std::visit(
      overloaded{
          [&](const frame::Params& x) {
            const auto& y = std::get<frame::Params>(b);
            return equal(x.id, y.id) && equal_seq(x.done, y.done) && equal_exprs(x.todo, y.todo);
          },
          [&](const frame::ConsTail& x) { return equal(x.head, std::get<frame::ConsTail>(b).head); },
          [&](const frame::ConsHead& x) { return equal(x.tail, std::get<frame::ConsHead>(b).tail); },
          [&](const frame::CallModule& x) {
            const auto& y = std::get<frame::CallModule>(b);
            return equal(x.function, y.function) && equal_exprs(x.args, y.args);
          },
          [&](const frame::CallFunction& x) {
            const auto& y = std::get<frame::CallFunction>(b);
            return equal(x.module, y.module) && equal_exprs(x.args, y.args);
          },
          [&](const frame::AppFn& x) { return equal_exprs(x.args, std::get<frame::AppFn>(b).args); },
          [&](const frame::CaseScrutinee& x) {
            return equal_clauses(x.clauses, std::get<frame::CaseScrutinee>(b).clauses);
          },
          [&](const frame::CaseGuard& x) {
            const auto& y = std::get<frame::CaseGuard>(b);
            return equal_seq(x.scrutinee, y.scrutinee) && equal_patterns(x.patterns, y.patterns) &&
                   equal(x.body, y.body) && equal_clauses(x.rest, y.rest);
          },
          [&](const frame::LetBind& x) {
            const auto& y = std::get<frame::LetBind>(b);
            return x.vars == y.vars && equal(x.body, y.body);
          },
          [&](const frame::SeqFirst& x) { return equal(x.second, std::get<frame::SeqFirst>(b).second); },
          [&](const frame::TryFirst& x) {
            const auto& y = std::get<frame::TryFirst>(b);
            return x.vars == y.vars && x.catch_vars == y.catch_vars && equal(x.on_value, y.on_value) &&
                   equal(x.on_exception, y.on_exception);
          },
      },
      a);
}

bool equal(const FrameStack& a, const FrameStack& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!equal(a.bottom_first()[i], b.bottom_first()[i])) return false;
  }
  return true;
}

bool equal(const Configuration& a, const Configuration& b) {
  return equal(a.stack, b.stack) && equal(a.redex, b.redex);
}

std::string_view rule_name(Rule r) { return kRuleNames[static_cast<std::size_t>(r)]; }

std::optional<Rule> rule_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kRuleCount; ++i) {
    if (kRuleNames[i] == name) return static_cast<Rule>(i);
  }
  return std::nullopt;
}

std::vector<Rule> all_rules() {
  std::vector<Rule> out;
  for (std::size_t i = 0; i < kRuleCount; ++i) out.push_back(static_cast<Rule>(i));
  return out;
}

StepOutcome step(const Configuration& c) {
  Configuration next = c;
  InPlace r = reduce(next);
  if (auto* rule = std::get_if<Rule>(&r)) return outcome::Stepped{*rule, std::move(next)};
  if (auto* fin = std::get_if<outcome::Final>(&r)) return std::move(*fin);
  return outcome::Stuck{std::get<Failure>(r).reason};
}

std::vector<Rule> applicable_rules(const Configuration& c) {
  std::vector<Rule> out;
  for (Rule r : all_rules()) {
    if (rule_applies(r, c)) out.push_back(r);
  }
  return out;
}

RunOutcome eval_star(Configuration c, std::size_t fuel, Trace* trace) {
  std::size_t steps = 0;
  for (;;) {
    const bool last = steps == fuel;
    Configuration before;
    if (trace || last) before = c;
    InPlace r = reduce(c);
    if (auto* fin = std::get_if<outcome::Final>(&r)) return run::Completed{std::move(fin->result), steps};
    if (auto* fail = std::get_if<Failure>(&r)) {
      // reduce() leaves c untouched when it fails.
      return run::Stuck{std::move(fail->reason), std::move(c), steps};
    }
    if (last) return run::OutOfFuel{std::move(before), steps};
    if (trace) trace->push_back(TraceEntry{steps, std::get<Rule>(r), std::move(before)});
    ++steps;
  }
}

TerminationReport terminates(const FrameStack& k, const Redex& r, std::size_t fuel) {
  TerminationReport rep;
  RunOutcome out = eval_star(Configuration{k, r}, fuel);
  std::visit(overloaded{
                 [&](run::Completed& x) {
                   rep.status = Termination::Terminates;
                   rep.steps = x.steps;
                   rep.result = std::move(x.result);
                 },
                 [&](run::OutOfFuel& x) {
                   rep.status = Termination::Unknown;
                   rep.steps = x.steps;
                 },
                 [&](run::Stuck& x) {
                   rep.status = Termination::Stuck;
                   rep.steps = x.steps;
                   rep.stuck_reason = std::move(x.reason);
                 },
             },
             out);
  return rep;
}

Substitution mk_closlist(const Ext& ext) {
  Substitution s;
  for (const auto& def : ext) s.insert_or_assign(def.id, val::closure(ext, def.params, def.body));
  return s;
}

ExprPtr plug(const Frame& f, const ExprPtr& e) {
  return std::visit(
      overloaded{
          [&](const frame::Params& p) -> ExprPtr {
            std::vector<ExprPtr> items = value_exprs(p.done);
            items.push_back(e);
            items.insert(items.end(), p.todo.begin(), p.todo.end());
            return std::visit(
                overloaded{
                    [&](const frame_id::Tuple&) { return expr::tuple(items); },
                    [&](const frame_id::Values&) { return expr::values(items); },
                    [&](const frame_id::Map&) {
                      if (items.size() % 2 != 0) throw std::invalid_argument("map frame with an odd number of items");
                      std::vector<std::pair<ExprPtr, ExprPtr>> pairs;
                      for (std::size_t i = 0; i < items.size(); i += 2) pairs.emplace_back(items[i], items[i + 1]);
                      return expr::map(std::move(pairs));
                    },
                    [&](const frame_id::PrimOp& x) { return expr::primop(x.name, items); },
                    [&](const frame_id::Call& x) {
                      return expr::call(expr::val(x.module), expr::val(x.function), items);
                    },
                    [&](const frame_id::App& x) { return expr::apply(expr::val(x.function), items); },
                },
                p.id);
          },
          [&](const frame::ConsTail& x) { return expr::cons(x.head, e); },
          [&](const frame::ConsHead& x) { return expr::cons(e, expr::val(x.tail)); },
          [&](const frame::CallModule& x) { return expr::call(e, x.function, x.args); },
          [&](const frame::CallFunction& x) { return expr::call(expr::val(x.module), e, x.args); },
          [&](const frame::AppFn& x) { return expr::apply(e, x.args); },
          [&](const frame::CaseScrutinee& x) { return expr::case_(e, x.clauses); },
          [&](const frame::CaseGuard& x) {
            // The body already has the match bindings applied, so the
            // patterns must not bind again: match on the empty sequence and
            // fall back to the remaining clauses on the original values.
            ExprPtr fallback = expr::case_(expr::values(value_exprs(x.scrutinee)), x.rest);
            return expr::case_(expr::values({}), {Clause{{}, e, x.body},
                                                  Clause{{}, expr::atom("true"), fallback}});
          },
          [&](const frame::LetBind& x) { return expr::let(x.vars, e, x.body); },
          [&](const frame::SeqFirst& x) { return expr::seq(e, x.second); },
          [&](const frame::TryFirst& x) {
            return expr::try_(e, x.vars, x.on_value, x.catch_vars, x.on_exception);
          },
      },
      f);
}

bool frame_closed(const Frame& f) { return is_closed(*plug(f, expr::atom("ok"))); }

bool stack_closed(const FrameStack& k) {
  for (const auto& f : k.bottom_first()) {
    if (!frame_closed(f)) return false;
  }
  return true;
}

FrameStack stack_concat(const FrameStack& top, const FrameStack& bottom) {
  std::vector<Frame> frames = top.top_first();
  std::vector<Frame> rest = bottom.top_first();
  frames.insert(frames.end(), rest.begin(), rest.end());
  return FrameStack::from_top_first(std::move(frames));
}

}  // namespace cerl
