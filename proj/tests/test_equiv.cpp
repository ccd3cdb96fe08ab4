#include <gtest/gtest.h>

#include "cerl/corpus.hpp"
#include "cerl/equiv.hpp"
#include "cerl/frontend.hpp"

using namespace cerl;

namespace {

Redex seq1(long n) { return ValueSeq{val::integer(n)}; }
EquivConfig small() {
  EquivConfig c;
  c.num_stacks = 10;
  c.num_substitutions = 20;
  return c;
}
ExprPtr entry_body(std::string_view src) { return parse_unit(src).definitions.back().def.body; }

}  // namespace

TEST(Ciu, Reflexive) {
  EXPECT_EQ(ciu_le(seq1(1), seq1(1), {}).kind, VerdictKind::Equivalent);
  ExprPtr e = parse_expr("case X of <[]> when 'true' -> 1 <_> when 'true' -> 2 end");
  EXPECT_EQ(ciu_equiv(e, e, {Var{"X"}}, small()).kind, VerdictKind::Equivalent);
}

TEST(Ciu, DistinguishesIntegers) {
  EquivVerdict v = ciu_le(seq1(1), seq1(2), {});
  ASSERT_EQ(v.kind, VerdictKind::Inequivalent);
  ASSERT_TRUE(v.witness);
  EXPECT_EQ(v.seed, 42u);
  EXPECT_EQ(v.fuel, 100000u);
  auto [l, r] = replay(*v.witness, seq1(1), seq1(2), v.fuel);
  EXPECT_NE(l.terminated(), r.terminated());
}

TEST(Ciu, SequencingCollapses) {
  EXPECT_EQ(ciu_equiv(parse_expr("do 'a' 'b'"), parse_expr("'b'"), {}).kind, VerdictKind::Equivalent);
}

TEST(Ciu, ExceptionsVersusValues) {
  Redex x = Exception{ExcClass::Throw, val::atom("a"), val::nil()};
  EXPECT_EQ(ciu_equiv(x, seq1(1), {}, small()).kind, VerdictKind::Inequivalent);
  Redex y = Exception{ExcClass::Error, val::atom("a"), val::nil()};
  EXPECT_EQ(ciu_equiv(x, y, {}, small()).kind, VerdictKind::Inequivalent);
}

TEST(Ciu, ClosuresProbedByApplication) {
  ExprPtr f = parse_expr("fun (X) -> X");
  ExprPtr g = parse_expr("fun (X) -> do 'a' X");
  ExprPtr h = parse_expr("fun (X) -> 'a'");
  EXPECT_EQ(ciu_equiv(f, g, {}, small()).kind, VerdictKind::Equivalent);
  EXPECT_EQ(ciu_equiv(f, h, {}, small()).kind, VerdictKind::Inequivalent);
}

TEST(Ciu, FuelExhaustionIsUnknown) {
  ExprPtr loop = parse_expr("letrec 'f'/0 = fun () -> apply 'f'/0() in apply 'f'/0()");
  EquivConfig c = small();
  c.fuel = 200;
  EquivVerdict v = ciu_equiv(loop, expr::atom("ok"), {}, c);
  EXPECT_EQ(v.kind, VerdictKind::Unknown);
  EXPECT_GT(v.unknown_trials, 0u);
  EXPECT_EQ(v.reason, "fuel");
}

TEST(Ciu, StuckIsBelowEverything) {
  ExprPtr stuck = parse_expr("let <X, Y> = 1 in X");
  EXPECT_EQ(ciu_le(stuck, expr::atom("ok"), {}, small()).kind, VerdictKind::Equivalent);
  EXPECT_EQ(ciu_le(expr::atom("ok"), stuck, {}, small()).kind, VerdictKind::Inequivalent);
}

TEST(Ciu, Refactoring) {
  ExprPtr guard = entry_body(corpus::kLengthGuard);
  ExprPtr pattern = entry_body(corpus::kLengthPattern);
  ExprPtr swapped = entry_body(corpus::kLengthPatternSwapped);
  NameSet gamma{Var{"_0"}};
  EXPECT_EQ(ciu_equiv(guard, pattern, gamma, small()).kind, VerdictKind::Equivalent);
  EquivVerdict bad = ciu_equiv(guard, swapped, gamma, small());
  ASSERT_EQ(bad.kind, VerdictKind::Inequivalent);
  EXPECT_TRUE(bad.witness->subst.count(Var{"_0"}));
}

TEST(Ciu, Deterministic) {
  ExprPtr guard = entry_body(corpus::kLengthGuard);
  ExprPtr swapped = entry_body(corpus::kLengthPatternSwapped);
  EquivVerdict a = ciu_equiv(guard, swapped, {Var{"_0"}}, small());
  EquivVerdict b = ciu_equiv(guard, swapped, {Var{"_0"}}, small());
  ASSERT_TRUE(a.witness && b.witness);
  EXPECT_EQ(a.trials, b.trials);
  EXPECT_EQ(print(a.witness->stack), print(b.witness->stack));
  EXPECT_EQ(print(a.witness->subst), print(b.witness->subst));
}

TEST(ClosingSubstitutions, CoverGammaAndFixedValuesFirst) {
  EquivConfig c;
  auto subs = closing_substitutions({Var{"A"}, Var{"B"}}, c);
  EXPECT_EQ(subs.size(), c.num_substitutions);
  for (const auto& s : subs) EXPECT_TRUE(subscoped({Var{"A"}, Var{"B"}}, s));
  EXPECT_TRUE(equal(subs.front().at(Var{"A"}), val::nil()));
  EXPECT_EQ(closing_substitutions({}, c).size(), 1u);
}

TEST(Distinguishable, Results) {
  EXPECT_TRUE(distinguishable(ValueSeq{val::integer(1)}, ValueSeq{val::integer(2)}));
  EXPECT_TRUE(distinguishable(ValueSeq{val::integer(1)}, ValueSeq{val::integer(1), val::integer(1)}));
  EXPECT_FALSE(distinguishable(ValueSeq{parse_value("{1,[]}")}, ValueSeq{parse_value("{1,[]}")}));
  ValuePtr c1 = val::closure({}, {}, expr::atom("a"));
  ValuePtr c2 = val::closure({}, {}, expr::atom("b"));
  EXPECT_FALSE(distinguishable(ValueSeq{c1}, ValueSeq{c2}));
}

TEST(ValueRel, Examples) {
  EXPECT_TRUE(value_rel(val::integer(5), val::integer(5), 2));
  EXPECT_FALSE(value_rel(val::nil(), val::tuple({}), 2));
  ValuePtr id = val::closure({}, {"x"}, expr::var("x"));
  ValuePtr seq_id = val::closure({}, {"x"}, expr::seq(expr::atom("a"), expr::var("x")));
  ValuePtr konst = val::closure({}, {"x"}, expr::atom("a"));
  EXPECT_TRUE(value_rel(id, seq_id, 2));
  EXPECT_FALSE(value_rel(id, konst, 2));
  EXPECT_FALSE(value_rel(id, val::closure({}, {"x", "y"}, expr::var("x")), 2));
}

TEST(RelatedValuesEqual, ReportsCounterexamples) {
  ValuesEqualReport ok = check_related_values_equal({{parse_value("{1,'a'}"), parse_value("{1,'a'}")}});
  EXPECT_TRUE(ok.ok());
  EXPECT_EQ(ok.checked, 1u);
  ValuesEqualReport bad = check_related_values_equal({{val::integer(1), val::integer(2)}});
  EXPECT_FALSE(bad.ok());
}
