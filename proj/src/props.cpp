#include "cerl/props.hpp"

#include <chrono>
#include <optional>
#include <sstream>

#include "cerl/builtins.hpp"
#include "cerl/corpus.hpp"
#include "cerl/equiv.hpp"
#include "cerl/frontend.hpp"
#include "cerl/generate.hpp"
#include "cerl/machine.hpp"

namespace cerl::props {

namespace {

template <class F>
CheckResult timed(std::string name, double limit, F&& body) {
  auto start = std::chrono::steady_clock::now();
  CheckResult r = body();
  r.name = std::move(name);
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  r.limit_seconds = limit;
  if (limit > 0 && r.seconds >= limit) {
    r.passed = false;
    r.detail += " (over the " + std::to_string(static_cast<int>(limit)) + " s limit)";
  }
  return r;
}

CheckResult result(bool passed, std::string detail) {
  CheckResult r;
  r.passed = passed;
  r.detail = std::move(detail);
  return r;
}

std::vector<Rule> rules_of(const Trace& t) {
  std::vector<Rule> out;
  for (const auto& e : t) out.push_back(e.rule);
  return out;
}

bool has_subsequence(const std::vector<Rule>& seq, const std::vector<Rule>& want) {
  std::size_t j = 0;
  for (Rule r : seq) {
    if (j < want.size() && r == want[j]) ++j;
  }
  return j == want.size();
}

const run::Completed* completed(const RunOutcome& o) { return std::get_if<run::Completed>(&o); }

ExprPtr entry_body(std::string_view source) {
  SourceUnit u = parse_unit(source);
  return u.definitions.back().def.body;
}

ValuePtr deep_copy(const ValuePtr& v) {
  return std::visit(
      [&](const auto& n) -> ValuePtr {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, val::Cons>) {
          return val::cons(deep_copy(n.head), deep_copy(n.tail));
        } else if constexpr (std::is_same_v<T, val::Tuple>) {
          std::vector<ValuePtr> elems;
          for (const auto& e : n.elems) elems.push_back(deep_copy(e));
          return val::tuple(std::move(elems));
        } else if constexpr (std::is_same_v<T, val::Map>) {
          std::vector<std::pair<ValuePtr, ValuePtr>> pairs;
          for (const auto& [k, x] : n.pairs) pairs.emplace_back(deep_copy(k), deep_copy(x));
          return val::map(std::move(pairs));
        } else {
          return std::make_shared<const Value>(Value::Node(n));
        }
      },
      v->node);
}

// --- determinism corpus ----------------------------------------------------

std::vector<Redex> small_redexes(Generator& gen) {
  auto a = [](const char* s) { return expr::atom(s); };
  auto i = [](long n) { return expr::integer(n); };
  ValuePtr id_clos = val::closure({}, {"X"}, expr::var("X"));
  std::vector<Redex> out = {
      a("ok"), i(1), expr::val(val::nil()), expr::val(id_clos),
      expr::fun({"X"}, expr::var("X")),
      expr::values({}), expr::values({i(1)}), expr::values({i(1), i(2)}),
      expr::cons(i(1), expr::val(val::nil())),
      expr::tuple({}), expr::tuple({i(1), a("a")}),
      expr::map({}), expr::map({{i(1), a("a")}}),
      expr::call("erlang", "length", {expr::val(val::nil())}),
      expr::call(i(1), a("f"), {}),
      expr::primop("raise", {a("throw"), a("x")}),
      expr::apply(expr::fun({}, a("ok")), {}),
      expr::apply(i(3), {i(1)}),
      expr::case_(i(1), {Clause{{pat::integer(1)}, a("true"), a("yes")}}),
      expr::case_(i(1), {}),
      expr::let({"X"}, i(1), expr::var("X")),
      expr::let({"X", "Y"}, i(1), a("ok")),
      expr::seq(i(1), i(2)),
      expr::letrec({FunDef{FunId{"f", 0}, {}, a("ok")}},
                   expr::apply(expr::val(val::funid("f", 0)), {})),
      expr::try_(i(1), {"X"}, expr::var("X"), {"C", "R", "D"}, a("caught")),
      ValueSeq{}, ValueSeq{val::true_atom()}, ValueSeq{val::false_atom()}, ValueSeq{val::integer(1)},
      ValueSeq{val::nil()}, ValueSeq{val::integer(1), val::integer(2)}, ValueSeq{id_clos},
      error_exception(val::atom("badarg"), val::integer(0)),
      Exception{ExcClass::Throw, val::atom("a"), val::nil()},
      Box{},
  };
  for (int k = 0; k < 15; ++k) out.push_back(gen.expr(3, {}));
  return out;
}

std::vector<Frame> small_frames(Generator& gen) {
  auto a = [](const char* s) { return expr::atom(s); };
  auto i = [](long n) { return expr::integer(n); };
  ValuePtr id_clos = val::closure({}, {"X"}, expr::var("X"));
  Clause match_one{{pat::integer(1)}, a("true"), a("one")};
  Clause any{{pat::var("X")}, a("true"), expr::var("X")};
  Clause two{{pat::var("X"), pat::var("Y")}, a("true"), a("two")};
  std::vector<Frame> out = {
      frame::Params{frame_id::Tuple{}, {}, {}},
      frame::Params{frame_id::Tuple{}, {val::integer(1)}, {i(2)}},
      frame::Params{frame_id::Tuple{}, {}, {i(1), i(2)}},
      frame::Params{frame_id::Values{}, {}, {}},
      frame::Params{frame_id::Values{}, {val::integer(1)}, {}},
      frame::Params{frame_id::Map{}, {}, {i(1)}},
      frame::Params{frame_id::Map{}, {val::integer(1)}, {}},
      frame::Params{frame_id::Map{}, {}, {}},
      frame::Params{frame_id::PrimOp{"raise"}, {val::atom("error")}, {}},
      frame::Params{frame_id::Call{val::atom("erlang"), val::atom("length")}, {}, {}},
      frame::Params{frame_id::App{id_clos}, {}, {}},
      frame::Params{frame_id::App{val::integer(7)}, {}, {i(1)}},
      frame::ConsTail{i(1)},
      frame::ConsHead{val::nil()},
      frame::CallModule{a("length"), {expr::val(val::nil())}},
      frame::CallFunction{val::atom("erlang"), {expr::val(val::nil())}},
      frame::AppFn{{}},
      frame::AppFn{{i(1)}},
      frame::CaseScrutinee{{}},
      frame::CaseScrutinee{{match_one, any}},
      frame::CaseScrutinee{{two}},
      frame::CaseGuard{{val::integer(1)}, {pat::var("X")}, a("body"), {any}},
      frame::CaseGuard{{val::integer(1)}, {pat::var("X")}, a("body"), {}},
      frame::LetBind{{"X"}, expr::var("X")},
      frame::LetBind{{"X", "Y"}, a("ok")},
      frame::LetBind{{}, a("ok")},
      frame::SeqFirst{a("next")},
      frame::TryFirst{{"X"}, expr::var("X"), {"C", "R", "D"}, expr::var("R")},
      frame::TryFirst{{"X", "Y"}, a("ok"), {"C", "R", "D"}, a("caught")},
  };
  for (int k = 0; k < 8; ++k) out.push_back(gen.frame(2));
  return out;
}

std::optional<std::pair<Configuration, std::size_t>> reached(const RunOutcome& o) {
  if (const auto* x = std::get_if<run::OutOfFuel>(&o)) return std::make_pair(x->at, x->steps);
  if (const auto* x = std::get_if<run::Stuck>(&o)) return std::make_pair(x->at, x->steps);
  if (const auto* x = std::get_if<run::Completed>(&o)) {
    return std::make_pair(Configuration{FrameStack{}, to_redex(x->result)}, x->steps);
  }
  return std::nullopt;
}

bool same_report(const TerminationReport& a, const TerminationReport& b) {
  if (a.status != b.status || a.steps != b.steps || a.result.has_value() != b.result.has_value()) return false;
  return !a.result || equal(*a.result, *b.result);
}

}  // namespace

CheckResult golden_example() {
  return timed("golden example", 1.0, [] {
    SourceUnit u = parse_unit(corpus::kLengthGuard);
    std::ostringstream detail;

    Trace t_nil;
    RunOutcome nil_run = eval_star({FrameStack{}, u.entry_expr({val::nil()})}, 10000, &t_nil);
    const auto* c_nil = completed(nil_run);
    bool ok_nil = c_nil && equal(c_nil->result, Result{ValueSeq{val::integer(1)}});
    bool rules_nil = has_subsequence(
        rules_of(t_nil), {Rule::SCase, Rule::SCaseSuccess, Rule::STry, Rule::SLet, Rule::SCallMod,
                          Rule::SCallFun, Rule::SCallParam, Rule::SParams0, Rule::PValue, Rule::PParams});
    detail << "f([]) = " << (c_nil ? print(c_nil->result) : "no result");
    if (c_nil) detail << " in " << c_nil->steps << " steps";

    Trace t_zero;
    RunOutcome zero_run = eval_star({FrameStack{}, u.entry_expr({val::integer(0)})}, 10000, &t_zero);
    const auto* c_zero = completed(zero_run);
    bool ok_zero = c_zero && equal(c_zero->result, Result{ValueSeq{val::integer(2)}});
    bool badarg_seen = false;
    for (const auto& e : t_zero) {
      const auto* x = std::get_if<Exception>(&e.before.redex);
      if (e.rule == Rule::ExcProp && x && equal(x->reason, val::atom("badarg"))) badarg_seen = true;
    }
    bool rules_zero = badarg_seen && has_subsequence(rules_of(t_zero), {Rule::SCallParam, Rule::PParams, Rule::ExcProp,
                                                                        Rule::ExcTry, Rule::SCaseFalse,
                                                                        Rule::SCaseSuccess, Rule::PCaseTrue});
    detail << "; f(0) = " << (c_zero ? print(c_zero->result) : "no result");
    if (c_zero) detail << " in " << c_zero->steps << " steps";
    if (!rules_nil) detail << "; rule sequence for [] is missing expected steps";
    if (!rules_zero) detail << "; rule sequence for 0 does not go through badarg/catch/'false'";
    return result(ok_nil && rules_nil && ok_zero && rules_zero, detail.str());
  });
}

CheckResult determinism(std::size_t min_configs) {
  return timed("determinism", 30.0, [min_configs] {
    Generator gen(11);
    std::vector<Redex> redexes = small_redexes(gen);
    std::vector<Frame> frames = small_frames(gen);
    std::vector<FrameStack> stacks{FrameStack{}};
    for (const auto& f : frames) stacks.push_back(FrameStack::from_top_first({f}));
    for (const auto& f : frames) {
      for (const auto& g : frames) stacks.push_back(FrameStack::from_top_first({f, g}));
    }
    std::size_t checked = 0, overlaps = 0, disagreements = 0;
    std::string first_problem;
    for (const auto& k : stacks) {
      for (const auto& r : redexes) {
        Configuration c{k, r};
        ++checked;
        std::vector<Rule> rules = applicable_rules(c);
        StepOutcome a = step(c);
        StepOutcome b = step(c);
        bool agree = a.index() == b.index();
        if (agree) {
          if (const auto* sa = std::get_if<outcome::Stepped>(&a)) {
            const auto& sb = std::get<outcome::Stepped>(b);
            agree = sa->rule == sb.rule && equal(sa->next, sb.next) && rules.size() == 1 && rules[0] == sa->rule;
          } else {
            agree = rules.empty();
          }
        }
        if (rules.size() > 1) {
          ++overlaps;
          if (first_problem.empty()) first_problem = "two rules apply to " + print(c);
        } else if (!agree) {
          ++disagreements;
          if (first_problem.empty()) first_problem = "step disagrees with the rule guards on " + print(c);
        }
      }
    }
    std::ostringstream d;
    d << checked << " configurations, " << overlaps << " with overlapping rules, " << disagreements
      << " where step disagrees";
    if (!first_problem.empty()) d << "; " << first_problem;
    return result(checked >= min_configs && overlaps == 0 && disagreements == 0, d.str());
  });
}

CheckResult extend_stack(std::size_t runs, std::uint64_t seed) {
  return timed("extend frame stack", 60.0, [runs, seed] {
    Generator gen(seed);
    std::size_t accepted = 0, attempts = 0, failures = 0;
    std::string first_problem;
    while (accepted < runs && attempts < runs * 50) {
      ++attempts;
      FrameStack k1 = gen.stack(2, 2);
      ExprPtr r = gen.expr(3, {});
      Trace base;
      RunOutcome out = eval_star({k1, r}, 10000, &base);
      const auto* done = completed(out);
      if (!done) continue;
      ++accepted;
      FrameStack extra = gen.stack(2, 2);
      if (extra.empty()) extra.push(gen.frame(2));
      Trace ext;
      RunOutcome out2 = eval_star({stack_concat(k1, extra), r}, done->steps, &ext);
      auto at = reached(out2);
      bool same = at && at->second == done->steps &&
                  equal(at->first, Configuration{extra, to_redex(done->result)}) &&
                  rules_of(base) == rules_of(ext);
      if (!same) {
        ++failures;
        if (first_problem.empty()) first_problem = "differs for " + print(Configuration{k1, r});
      }
    }
    std::ostringstream d;
    d << accepted << " terminating runs extended, " << failures << " mismatches";
    if (!first_problem.empty()) d << "; " << first_problem;
    return result(accepted >= runs && failures == 0, d.str());
  });
}

CheckResult remove_add_frame(std::size_t cases, std::uint64_t seed) {
  return timed("remove/add frame", 120.0, [cases, seed] {
    Generator gen(seed);
    const std::size_t fuel = 100000;
    std::size_t decided = 0, unknown = 0, terminating = 0, failures = 0;
    std::string first_problem;
    for (std::size_t i = 0; i < cases; ++i) {
      Frame f = gen.frame(2);
      ExprPtr e = gen.expr(2, {});
      FrameStack k = gen.stack(2, 2);
      FrameStack fk = k;
      fk.push(f);
      TerminationReport inside = terminates(fk, e, fuel);
      TerminationReport plugged = terminates(k, plug(f, e), fuel);
      if (inside.status == Termination::Unknown || plugged.status == Termination::Unknown) {
        ++unknown;
        continue;
      }
      ++decided;
      if (inside.terminated()) ++terminating;
      if (inside.terminated() != plugged.terminated()) {
        ++failures;
        if (first_problem.empty()) first_problem = "disagree on " + print(Configuration{fk, e});
      }
    }
    double unknown_rate = cases ? static_cast<double>(unknown) / static_cast<double>(cases) : 0.0;
    std::ostringstream d;
    d << decided << " decided (" << terminating << " terminating), " << failures << " disagreements, " << unknown
      << " unknown (" << unknown_rate * 100 << "%)";
    if (!first_problem.empty()) d << "; " << first_problem;
    return result(decided + unknown >= cases && failures == 0 && unknown_rate < 0.05, d.str());
  });
}

CheckResult ciu_soundness(std::size_t redexes, std::uint64_t seed) {
  return timed("CIU harness soundness", 120.0, [redexes, seed] {
    EquivConfig cfg;
    Redex one = ValueSeq{val::integer(1)};
    Redex two = ValueSeq{val::integer(2)};
    EquivVerdict v = ciu_equiv(one, two, {}, cfg);
    bool distinguished = v.kind == VerdictKind::Inequivalent && v.witness.has_value();
    bool replays = false;
    std::ostringstream d;
    if (distinguished) {
      auto [l, r] = replay(*v.witness, one, two, cfg.fuel);
      replays = same_report(l, v.witness->left) && same_report(r, v.witness->right);
      d << "<1> vs <2>: Inequivalent at " << print(v.witness->stack) << (replays ? " (replayed)" : " (replay differs)");
    } else {
      d << "<1> vs <2>: " << verdict_name(v.kind);
    }

    Generator gen(seed);
    std::size_t failures = 0;
    std::string first_problem;
    for (std::size_t i = 0; i < redexes; ++i) {
      Redex r;
      if (i % 10 == 0) {
        r = ValueSeq{gen.value(2, true)};
      } else if (i % 10 == 1) {
        r = Exception{ExcClass::Throw, gen.value(2), gen.value(1)};
      } else {
        r = gen.expr(3, {});
      }
      EquivVerdict self = ciu_equiv(r, r, {}, cfg);
      if (self.kind != VerdictKind::Equivalent) {
        ++failures;
        if (first_problem.empty()) {
          first_problem = std::string(verdict_name(self.kind)) + " for " + print(r);
        }
      }
    }
    d << "; reflexivity: " << redexes - failures << "/" << redexes << " equivalent";
    if (!first_problem.empty()) d << "; " << first_problem;
    return result(distinguished && replays && failures == 0, d.str());
  });
}

CheckResult refactoring() {
  return timed("refactoring", 120.0, [] {
    EquivConfig cfg;
    NameSet gamma{Var{"_0"}};
    ExprPtr guard = entry_body(corpus::kLengthGuard);
    ExprPtr pattern = entry_body(corpus::kLengthPattern);
    ExprPtr swapped = entry_body(corpus::kLengthPatternSwapped);

    std::vector<Substitution> substs = closing_substitutions(gamma, cfg);
    bool covers = true;
    for (const char* want : {"[]", "[1]", "[1,2]", "0", "'a'", "{1,'a'}"}) {
      ValuePtr w = parse_value(want);
      bool found = false;
      for (const auto& s : substs) found = found || equal(s.at(Var{"_0"}), w);
      covers = covers && found;
    }

    EquivVerdict ok = ciu_equiv(guard, pattern, gamma, cfg);
    EquivVerdict bad = ciu_equiv(guard, swapped, gamma, cfg);
    std::ostringstream d;
    d << "guard vs pattern: " << verdict_name(ok.kind) << " over " << ok.substitutions << " substitutions x "
      << ok.stacks_per_substitution << "+ stacks (" << ok.trials << " trials, " << ok.unknown_trials
      << " unknown); guard vs swapped: " << verdict_name(bad.kind);
    if (!covers) d << "; substitutions miss a required argument";
    bool passed = covers && ok.kind == VerdictKind::Equivalent && ok.unknown_trials == 0 &&
                  ok.substitutions >= 100 && ok.stacks_per_substitution >= 50 &&
                  bad.kind == VerdictKind::Inequivalent;
    return result(passed, d.str());
  });
}

CheckResult values_equal(std::size_t pairs) {
  return timed("equivalent values are equal", 10.0, [pairs] {
    EquivConfig cfg;
    std::vector<ValuePtr> base{val::integer(0), val::integer(1), val::atom("a"), val::atom("b"), val::nil()};
    std::vector<ValuePtr> pool = base;
    pool.push_back(val::tuple({}));
    for (const auto& x : base) {
      pool.push_back(val::tuple({x}));
      for (const auto& y : base) {
        pool.push_back(val::cons(x, y));
        pool.push_back(val::tuple({x, y}));
        pool.push_back(val::map({{x, y}}));
      }
    }
    // One more level of nesting for the accepted side; each value paired
    // with an independent copy of itself.
    std::vector<ValuePtr> deep = pool;
    for (const auto& x : pool) {
      for (const auto& y : base) {
        deep.push_back(val::cons(x, y));
        deep.push_back(val::tuple({y, x}));
        deep.push_back(val::map({{y, x}}));
      }
    }
    std::vector<std::pair<ValuePtr, ValuePtr>> accepted, rejected;
    for (const auto& x : deep) {
      ValuePtr y = deep_copy(x);
      (value_rel(x, y, 2, cfg) ? accepted : rejected).emplace_back(x, y);
    }
    for (std::size_t i = 0; i < pool.size(); ++i) {
      for (std::size_t j = 0; j < pool.size(); ++j) {
        if (i == j) continue;
        (value_rel(pool[i], deep_copy(pool[j]), 2, cfg) ? accepted : rejected).emplace_back(pool[i], pool[j]);
      }
    }
    ValuesEqualReport rep = check_related_values_equal(accepted);
    std::size_t wrongly_equal = 0;
    for (const auto& [a, b] : rejected) {
      if (!equal(bif_equal(a, b), val::false_atom())) ++wrongly_equal;
    }
    std::ostringstream d;
    d << accepted.size() << " related pairs, " << rep.counterexamples.size() << " not '=='; " << rejected.size()
      << " unrelated pairs, " << wrongly_equal << " '=='";
    return result(accepted.size() >= pairs && rejected.size() >= pairs && rep.ok() && wrongly_equal == 0, d.str());
  });
}

CheckResult exc_case() {
  return timed("ExcCase", 0, [] {
    Exception expected{ExcClass::Error, val::atom("if_clause"), val::tuple({})};
    ExprPtr e = parse_expr("case 1 of <2> when 'true' -> 'a' end");
    Trace t;
    RunOutcome out = eval_star({FrameStack{}, e}, 100, &t);
    const auto* c = completed(out);
    bool via_program = c && equal(c->result, Result{expected}) && !t.empty() && t.back().rule == Rule::ExcCase;

    StepOutcome direct = step({FrameStack::from_top_first({frame::CaseScrutinee{{}}}), ValueSeq{val::integer(1)}});
    const auto* s = std::get_if<outcome::Stepped>(&direct);
    bool via_rule = s && s->rule == Rule::ExcCase && s->next.stack.empty() && equal(s->next.redex, Redex{expected});
    std::string got = c ? print(c->result) : "no result";
    return result(via_program && via_rule, "case with no matching clause gives " + got);
  });
}

CheckResult round_trip(std::size_t terms, std::uint64_t seed) {
  return timed("round trip", 10.0, [terms, seed] {
    Generator gen(seed);
    std::size_t failures = 0;
    std::string first_problem;
    for (std::size_t i = 0; i < terms; ++i) {
      ExprPtr e = gen.source_expr(4);
      std::string text = print(e);
      try {
        ExprPtr back = parse_expr(text);
        if (!equal(e, back)) {
          ++failures;
          if (first_problem.empty()) first_problem = "changed: " + text;
        }
      } catch (const ParseError& err) {
        ++failures;
        if (first_problem.empty()) first_problem = std::string(err.what()) + " in " + text;
      }
    }
    std::ostringstream d;
    d << terms << " expressions, " << failures << " failures";
    if (!first_problem.empty()) d << "; " << first_problem;
    return result(failures == 0, d.str());
  });
}

std::vector<Suite> suites(const std::string& which) {
  std::vector<Suite> golden{{"golden example", [] { return golden_example(); }},
                            {"ExcCase", [] { return exc_case(); }}};
  std::vector<Suite> props{
      {"determinism", [] { return determinism(); }},
      {"extend frame stack", [] { return extend_stack(); }},
      {"remove/add frame", [] { return remove_add_frame(); }},
      {"CIU harness soundness", [] { return ciu_soundness(); }},
      {"refactoring", [] { return refactoring(); }},
      {"equivalent values are equal", [] { return values_equal(); }},
      {"round trip", [] { return round_trip(); }},
  };
  if (which == "golden") return golden;
  if (which == "props") return props;
  golden.insert(golden.end(), props.begin(), props.end());
  return golden;
}

}  // namespace cerl::props
