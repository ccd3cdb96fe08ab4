#include <gtest/gtest.h>

#include "cerl/ast.hpp"
#include "cerl/frontend.hpp"

using namespace cerl;

namespace {

NameSet vars_named(std::initializer_list<const char*> ids) {
  NameSet out;
  for (const char* id : ids) out.insert(Var{id});
  return out;
}

}  // namespace

TEST(FreeNames, Literals) { EXPECT_TRUE(free_names(*expr::integer(1)).empty()); }

TEST(FreeNames, LetBinderCoversBody) {
  EXPECT_TRUE(free_names(*expr::let({"x"}, expr::integer(1), expr::var("x"))).empty());
}

TEST(FreeNames, LetBoundExpressionIsOutsideBinder) {
  EXPECT_EQ(free_names(*expr::let({"x"}, expr::var("x"), expr::var("x"))), vars_named({"x"}));
}

TEST(FreeNames, Apply) {
  ExprPtr e = expr::apply(expr::var("f"), {expr::var("f"), expr::var("g")});
  EXPECT_EQ(free_names(*e), vars_named({"f", "g"}));
}

TEST(FreeNames, FunIdsAndLetrec) {
  ExprPtr call = expr::apply(expr::val(val::funid("f", 0)), {});
  EXPECT_EQ(free_names(*call), (NameSet{FunId{"f", 0}}));
  ExprPtr rec = expr::letrec({FunDef{FunId{"f", 0}, {}, call}}, call);
  EXPECT_TRUE(free_names(*rec).empty());
}

TEST(FreeNames, CaseBindsPatternVariablesInGuardAndBody) {
  ExprPtr e = parse_expr("case Y of <X> when X -> {X, Z} end");
  EXPECT_EQ(free_names(*e), vars_named({"Y", "Z"}));
}

TEST(FreeNames, TryBindsSeparately) {
  ExprPtr e = parse_expr("try A of <X> -> {X, C} catch <C, R, D> -> {X, R}");
  EXPECT_EQ(free_names(*e), vars_named({"A", "C", "X"}));
}

TEST(FreeNames, ClosureParams) {
  ValuePtr c = val::closure({}, {"x"}, expr::tuple({expr::var("x"), expr::var("y")}));
  EXPECT_EQ(free_names(*c), vars_named({"y"}));
}

TEST(CheckScope, Examples) {
  EXPECT_TRUE(check_scope({}, expr::atom("ok")));
  EXPECT_FALSE(check_scope({}, expr::var("x")));
  EXPECT_TRUE(check_scope(vars_named({"x"}), expr::cons(expr::var("x"), expr::val(val::nil()))));
}

TEST(CheckScope, RejectsIllFormed) {
  Clause one{{pat::var("X")}, expr::atom("true"), expr::atom("a")};
  Clause two{{pat::var("X"), pat::var("Y")}, expr::atom("true"), expr::atom("b")};
  EXPECT_FALSE(check_scope({}, expr::case_(expr::integer(1), {one, two})));
  EXPECT_FALSE(check_scope({}, expr::try_(expr::integer(1), {"X"}, expr::var("X"), {"C", "R"}, expr::var("R"))));
  EXPECT_FALSE(well_formed(*expr::letrec({FunDef{FunId{"f", 2}, {"A"}, expr::atom("ok")}}, expr::atom("ok"))));
}

TEST(NamesOf, Examples) {
  EXPECT_TRUE(names_of({}).empty());
  EXPECT_EQ(names_of({FunDef{FunId{"f", 1}, {"x"}, expr::var("x")}}), (NameSet{FunId{"f", 1}}));
  Ext two{FunDef{FunId{"f", 0}, {}, expr::atom("a")}, FunDef{FunId{"g", 2}, {"a", "b"}, expr::atom("b")}};
  EXPECT_EQ(names_of(two), (NameSet{FunId{"f", 0}, FunId{"g", 2}}));
}

TEST(TermOrder, ConstructorRank) {
  std::vector<ValuePtr> ascending{
      val::integer(100), val::atom("a"), val::var("X"), val::funid("f", 0),
      val::closure({}, {}, expr::atom("ok")), val::nil(), val::cons(val::integer(1), val::nil()),
      val::tuple({}), val::map({})};
  for (std::size_t i = 0; i + 1 < ascending.size(); ++i) {
    EXPECT_TRUE(compare(ascending[i], ascending[i + 1]) < 0) << i;
    EXPECT_TRUE(compare(ascending[i + 1], ascending[i]) > 0) << i;
  }
}

TEST(TermOrder, WithinConstructors) {
  EXPECT_TRUE(compare(val::integer(-5), val::integer(3)) < 0);
  EXPECT_TRUE(compare(val::atom("a"), val::atom("b")) < 0);
  EXPECT_TRUE(compare(val::tuple({val::integer(1)}), val::tuple({val::integer(2)})) < 0);
  EXPECT_TRUE(compare(val::list({val::integer(1), val::atom("x")}), val::list({val::integer(1), val::atom("x")})) == 0);
}

TEST(Integers, Unbounded) {
  Integer big = Integer(1) << 100;
  EXPECT_EQ(print(val::integer(big)), "1267650600228229401496703205376");
}

TEST(Maps, CanonicalWithOverride) {
  ValuePtr m = val::map({{val::integer(2), val::atom("b")}, {val::integer(1), val::atom("a")},
                         {val::integer(2), val::atom("c")}});
  const auto& pairs = std::get<val::Map>(m->node).pairs;
  ASSERT_EQ(pairs.size(), 2u);
  EXPECT_TRUE(equal(pairs[0].first, val::integer(1)));
  EXPECT_TRUE(equal(pairs[1].second, val::atom("c")));
}

TEST(Exceptions, ClassNames) {
  EXPECT_EQ(exc_class_name(ExcClass::Error), "error");
  EXPECT_EQ(exc_class_from_atom("throw"), ExcClass::Throw);
  EXPECT_EQ(exc_class_from_atom("exit"), ExcClass::Exit);
  EXPECT_FALSE(exc_class_from_atom("oops").has_value());
}

TEST(Redex, FromResult) {
  Redex r = to_redex(Result{ValueSeq{val::integer(1)}});
  ASSERT_TRUE(std::holds_alternative<ValueSeq>(r));
  Redex x = to_redex(Result{Exception{ExcClass::Throw, val::atom("a"), val::nil()}});
  EXPECT_TRUE(std::holds_alternative<Exception>(x));
}

TEST(ContainsClosure, Nested) {
  EXPECT_FALSE(contains_closure(*val::tuple({val::integer(1)})));
  EXPECT_TRUE(contains_closure(*val::list({val::integer(1), val::closure({}, {}, expr::atom("a"))})));
}
