#include <gtest/gtest.h>

#include <set>

#include "cerl/builtins.hpp"
#include "cerl/corpus.hpp"
#include "cerl/frontend.hpp"
#include "cerl/machine.hpp"

using namespace cerl;

namespace {

Configuration cfg(FrameStack k, Redex r) { return Configuration{std::move(k), std::move(r)}; }
Configuration cfg(Redex r) { return Configuration{FrameStack{}, std::move(r)}; }

outcome::Stepped stepped(const StepOutcome& o) {
  const auto* s = std::get_if<outcome::Stepped>(&o);
  EXPECT_TRUE(s) << "expected a step";
  return s ? *s : outcome::Stepped{Rule::PValue, {}};
}

Result run_to_result(const std::string& src, std::size_t fuel = 10000, Trace* trace = nullptr) {
  RunOutcome o = eval_star(cfg(parse_expr(src)), fuel, trace);
  const auto* c = std::get_if<run::Completed>(&o);
  EXPECT_TRUE(c) << src;
  return c ? c->result : Result{ValueSeq{}};
}

Result seq(std::initializer_list<const char*> vs) {
  ValueSeq out;
  for (const char* v : vs) out.push_back(parse_value(v));
  return out;
}

}  // namespace

TEST(Step, ConsTailFirst) {
  ExprPtr e1 = expr::tuple({}), e2 = expr::tuple({expr::integer(1)});
  outcome::Stepped s = stepped(step(cfg(expr::cons(e1, e2))));
  EXPECT_EQ(s.rule, Rule::SConsTail);
  EXPECT_TRUE(equal(s.next, cfg(FrameStack::from_top_first({frame::ConsTail{e1}}), e2)));
}

TEST(Step, ValueToSingleton) {
  outcome::Stepped s = stepped(step(cfg(expr::atom("ok"))));
  EXPECT_EQ(s.rule, Rule::PValue);
  EXPECT_TRUE(equal(s.next, cfg(ValueSeq{val::atom("ok")})));
}

TEST(Step, ExceptionPropagatesPastNonHandlers) {
  Exception x{ExcClass::Throw, val::atom("a"), val::nil()};
  FrameStack k = FrameStack::from_top_first({frame::SeqFirst{expr::atom("b")}, frame::LetBind{{"X"}, expr::var("X")}});
  outcome::Stepped s = stepped(step(cfg(k, x)));
  EXPECT_EQ(s.rule, Rule::ExcProp);
  EXPECT_TRUE(equal(s.next, cfg(FrameStack::from_top_first({frame::LetBind{{"X"}, expr::var("X")}}), x)));
}

TEST(Step, CaseWithoutClauses) {
  outcome::Stepped s = stepped(step(cfg(FrameStack::from_top_first({frame::CaseScrutinee{{}}}), ValueSeq{val::integer(1)})));
  EXPECT_EQ(s.rule, Rule::ExcCase);
  EXPECT_TRUE(equal(s.next, cfg(if_clause_exception())));
}

TEST(Step, FinalAndStuck) {
  EXPECT_TRUE(std::holds_alternative<outcome::Final>(step(cfg(ValueSeq{val::integer(1)}))));
  EXPECT_TRUE(std::holds_alternative<outcome::Final>(step(cfg(if_clause_exception()))));
  EXPECT_TRUE(std::holds_alternative<outcome::Stuck>(step(cfg(Box{}))));
  EXPECT_TRUE(applicable_rules(cfg(Box{})).empty());
}

TEST(Step, LetArityMismatchIsStuck) {
  FrameStack k = FrameStack::from_top_first({frame::LetBind{{"X", "Y"}, expr::var("X")}});
  EXPECT_TRUE(std::holds_alternative<outcome::Stuck>(step(cfg(k, ValueSeq{val::integer(1)}))));
}

TEST(Step, NonBooleanGuardIsStuck) {
  RunOutcome o = eval_star(cfg(parse_expr("case 1 of <X> when 7 -> 'a' end")), 100);
  EXPECT_TRUE(std::holds_alternative<run::Stuck>(o));
}

TEST(Step, FailedStepLeavesNothingBehind) {
  Configuration c = cfg(FrameStack::from_top_first({frame::LetBind{{"X", "Y"}, expr::var("X")}}),
                        ValueSeq{val::integer(1)});
  Configuration before = c;
  (void)step(c);
  EXPECT_TRUE(equal(c, before));
}

TEST(EvalStar, SingleValue) {
  RunOutcome o = eval_star(cfg(expr::integer(1)), 1);
  const auto* c = std::get_if<run::Completed>(&o);
  ASSERT_TRUE(c);
  EXPECT_EQ(c->steps, 1u);
  EXPECT_TRUE(equal(c->result, seq({"1"})));
}

TEST(EvalStar, RecursiveLoopRunsOutOfFuel) {
  RunOutcome o = eval_star(cfg(parse_expr("letrec 'f'/0 = fun () -> apply 'f'/0() in apply 'f'/0()")), 1000);
  const auto* f = std::get_if<run::OutOfFuel>(&o);
  ASSERT_TRUE(f);
  EXPECT_EQ(f->steps, 1000u);
}

TEST(EvalStar, OutOfFuelReportsReachedConfiguration) {
  Trace t;
  RunOutcome full = eval_star(cfg(parse_expr("{1, {2}}")), 100, &t);
  ASSERT_TRUE(std::holds_alternative<run::Completed>(full));
  for (std::size_t n = 0; n < t.size(); ++n) {
    RunOutcome part = eval_star(cfg(parse_expr("{1, {2}}")), n);
    const auto* f = std::get_if<run::OutOfFuel>(&part);
    ASSERT_TRUE(f) << n;
    EXPECT_TRUE(equal(f->at, t[n].before)) << n;
  }
}

TEST(EvalStar, LengthGuardProgram) {
  SourceUnit u = parse_unit(corpus::kLengthGuard);
  RunOutcome a = eval_star(cfg(u.entry_expr({val::nil()})), 10000);
  ASSERT_TRUE(std::holds_alternative<run::Completed>(a));
  EXPECT_TRUE(equal(std::get<run::Completed>(a).result, seq({"1"})));
  TerminationReport b = terminates({}, u.entry_expr({val::integer(0)}), 10000);
  EXPECT_TRUE(b.terminated());
  EXPECT_TRUE(equal(*b.result, seq({"2"})));
}

TEST(Terminates, Examples) {
  TerminationReport done = terminates({}, ValueSeq{val::atom("a")}, 0);
  EXPECT_TRUE(done.terminated());
  EXPECT_EQ(done.steps, 0u);
  TerminationReport box = terminates({}, Box{}, 10);
  EXPECT_EQ(box.status, Termination::Stuck);
  EXPECT_FALSE(box.terminated());
  TerminationReport loop =
      terminates({}, parse_expr("letrec 'f'/0 = fun () -> apply 'f'/0() in apply 'f'/0()"), 50);
  EXPECT_EQ(loop.status, Termination::Unknown);
}

TEST(Programs, Results) {
  EXPECT_TRUE(equal(run_to_result("letrec 'f'/0 = fun () -> 'ok' in apply 'f'/0()"), seq({"'ok'"})));
  EXPECT_TRUE(equal(run_to_result("[{1}|{2}]"), seq({"[{1}|{2}]"})));
  EXPECT_TRUE(equal(run_to_result("let <X,Y> = <1,2> in {Y,X}"), seq({"{2,1}"})));
  EXPECT_TRUE(equal(run_to_result("~{1=>{}, 1=>2}~"), seq({"~{1=>2}~"})));
  EXPECT_TRUE(equal(run_to_result("call 'erlang':'+'(call 'erlang':'*'(2, 3), 4)"), seq({"10"})));
  EXPECT_TRUE(equal(run_to_result("apply fun (X, Y) -> {Y, X}(1, 2)"), seq({"{2,1}"})));
  EXPECT_TRUE(equal(run_to_result("<>"), seq({})));
  EXPECT_TRUE(equal(run_to_result("try primop 'raise'('throw', 'x') of <V> -> V catch <C, R, D> -> {C, R}"),
                    seq({"{'throw','x'}"})));
  EXPECT_TRUE(equal(run_to_result("case {1,2} of <{A,B}> when call 'erlang':'<'(B, A) -> 'gt' "
                                  "<{A,B}> when 'true' -> 'le' end"),
                    seq({"'le'"})));
  EXPECT_TRUE(equal(run_to_result("letrec 'even'/1 = fun (N) -> case N of <0> when 'true' -> 'true' "
                                  "<M> when 'true' -> apply 'odd'/1(call 'erlang':'-'(M, 1)) end "
                                  "'odd'/1 = fun (N) -> case N of <0> when 'true' -> 'false' "
                                  "<M> when 'true' -> apply 'even'/1(call 'erlang':'-'(M, 1)) end "
                                  "in apply 'even'/1(10)"),
                    seq({"'true'"})));
}

TEST(Programs, ListsEvaluateRightToLeft) {
  Result r = run_to_result("[primop 'raise'('throw', 'head') | primop 'raise'('throw', 'tail')]");
  ASSERT_TRUE(std::holds_alternative<Exception>(r));
  EXPECT_TRUE(equal(std::get<Exception>(r).reason, val::atom("tail")));
}

TEST(Programs, EveryRuleIsExercised) {
  const char* programs[] = {
      "[{1}|{2}]", "let <X> = {} in X", "do {} 1", "apply fun (X) -> X({1})", "apply fun () -> 1()",
      "call 'erlang':'+'(1, 2)", "primop 'raise'('throw', 'x')", "<{}, 1>", "{1, 2}", "~{1=>2}~", "~{}~",
      "case <1, 2> of <2, X> when 'true' -> X <X, 2> when 'false' -> X <X, Y> when 'true' -> Y end",
      "case 1 of <2> when 'true' -> 'a' end", "fun () -> 1",
      "letrec 'f'/0 = fun () -> 'ok' in apply 'f'/0()",
      "try 1 of <X> -> X catch <C, R, D> -> R", "try do primop 'raise'('throw', 'x') 1 of <X> -> X catch <C, R, D> -> R",
  };
  std::set<Rule> seen;
  for (const char* p : programs) {
    Trace t;
    eval_star(cfg(parse_expr(p)), 1000, &t);
    for (const auto& e : t) seen.insert(e.rule);
  }
  for (Rule r : all_rules()) EXPECT_TRUE(seen.count(r)) << rule_name(r);
}

TEST(Rules, NamesRoundTrip) {
  EXPECT_EQ(all_rules().size(), kRuleCount);
  for (Rule r : all_rules()) EXPECT_EQ(rule_from_name(rule_name(r)), r);
  EXPECT_EQ(rule_name(Rule::SParams0), "SParams0");
  EXPECT_FALSE(rule_from_name("Nope").has_value());
}

TEST(MkClosList, Examples) {
  EXPECT_TRUE(mk_closlist({}).empty());
  Ext ext{FunDef{FunId{"f", 0}, {}, expr::atom("ok")}};
  Substitution s = mk_closlist(ext);
  ASSERT_EQ(s.size(), 1u);
  EXPECT_TRUE(equal(s.at(FunId{"f", 0}), val::closure(ext, {}, expr::atom("ok"))));
}

TEST(Plug, Syntactic) {
  ExprPtr e = expr::tuple({});
  EXPECT_TRUE(equal(plug(frame::SeqFirst{expr::atom("b")}, e), expr::seq(e, expr::atom("b"))));
  EXPECT_TRUE(equal(plug(frame::ConsHead{val::nil()}, e), expr::cons(e, expr::val(val::nil()))));
  EXPECT_TRUE(equal(plug(frame::Params{frame_id::Tuple{}, {val::integer(1)}, {expr::integer(3)}}, e),
                    parse_expr("{1, {}, 3}")));
}

TEST(Plug, CaseGuardDoesNotRebind) {
  Clause rest{{pat::var("Z")}, expr::atom("true"), expr::atom("other")};
  frame::CaseGuard g{{val::integer(5)}, {pat::var("X")}, expr::integer(5), {rest}};
  ExprPtr plugged = plug(g, expr::atom("true"));
  EXPECT_TRUE(is_closed(*plugged));
  EXPECT_TRUE(equal(run_to_result(print(plugged)), seq({"5"})));
  EXPECT_TRUE(equal(run_to_result(print(plug(g, expr::atom("false")))), seq({"'other'"})));
}

TEST(Plug, Closedness) {
  EXPECT_TRUE(frame_closed(frame::LetBind{{"X"}, expr::var("X")}));
  EXPECT_FALSE(frame_closed(frame::LetBind{{"X"}, expr::var("Y")}));
  EXPECT_TRUE(stack_closed(FrameStack{}));
}

TEST(StackConcat, Examples) {
  FrameStack k = FrameStack::from_top_first({frame::SeqFirst{expr::atom("a")}});
  FrameStack g = FrameStack::from_top_first({frame::SeqFirst{expr::atom("b")}});
  EXPECT_TRUE(equal(stack_concat({}, k), k));
  EXPECT_TRUE(equal(stack_concat(k, {}), k));
  FrameStack both = stack_concat(k, g);
  ASSERT_EQ(both.size(), 2u);
  EXPECT_TRUE(equal(both.at(0), k.top()));
  EXPECT_TRUE(equal(both.at(1), g.top()));
}
