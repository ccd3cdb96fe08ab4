#include <gtest/gtest.h>

#include "cerl/frontend.hpp"
#include "cerl/subst.hpp"

using namespace cerl;

namespace {
Substitution x_to(long n) { return {{Var{"x"}, val::integer(n)}}; }
}  // namespace

TEST(Apply, Variable) { EXPECT_TRUE(equal(cerl::apply(expr::var("x"), x_to(5)), expr::integer(5))); }

TEST(Apply, LetShadowsBodyOnly) {
  ExprPtr e = expr::let({"x"}, expr::var("x"), expr::var("x"));
  ExprPtr want = expr::let({"x"}, expr::integer(1), expr::var("x"));
  EXPECT_TRUE(equal(cerl::apply(e, x_to(1)), want));
}

TEST(Apply, ClosedTermsAreFixed) {
  ExprPtr ok = expr::atom("ok");
  EXPECT_EQ(cerl::apply(ok, x_to(1)), ok);
}

TEST(Apply, BindersShadow) {
  Substitution s = {{Var{"X"}, val::integer(1)}, {Var{"Y"}, val::integer(2)}};
  auto check = [&](const char* in, const char* out) {
    EXPECT_TRUE(equal(cerl::apply(parse_expr(in), s), parse_expr(out))) << in;
  };
  check("fun (X) -> {X, Y}", "fun (X) -> {X, 2}");
  check("case X of <X> when X -> Y end", "case 1 of <X> when X -> 2 end");
  check("try X of <X> -> X catch <C, Y, D> -> {X, Y}", "try 1 of <X> -> X catch <C, Y, D> -> {1, Y}");
  check("do X Y", "do 1 2");
}

TEST(Apply, FunIdShadowedByLetrec) {
  Substitution s = {{FunId{"f", 0}, val::atom("replaced")}};
  ExprPtr call = expr::apply(expr::val(val::funid("f", 0)), {});
  ExprPtr rec = expr::letrec({FunDef{FunId{"f", 0}, {}, call}}, call);
  EXPECT_TRUE(equal(cerl::apply(rec, s), rec));
  EXPECT_TRUE(equal(cerl::apply(call, s), expr::apply(expr::atom("replaced"), {})));
}

TEST(Apply, InsideClosures) {
  ValuePtr c = val::closure({}, {"A"}, expr::tuple({expr::var("A"), expr::var("x")}));
  ValuePtr want = val::closure({}, {"A"}, expr::tuple({expr::var("A"), expr::integer(3)}));
  EXPECT_TRUE(equal(cerl::apply(c, x_to(3)), want));
}

TEST(Apply, RejectsOpenRange) {
  Substitution s = {{Var{"x"}, val::var("y")}};
  EXPECT_THROW(cerl::apply(expr::var("x"), s), OpenSubstitutionError);
}

TEST(Apply, Redexes) {
  Redex r = ValueSeq{val::var("x")};
  Redex out = cerl::apply(r, x_to(4));
  EXPECT_TRUE(equal(out, Redex{ValueSeq{val::integer(4)}}));
  EXPECT_TRUE(std::holds_alternative<Box>(cerl::apply(Redex{Box{}}, x_to(4))));
}

TEST(ComposeUpdate, Examples) {
  Substitution a = compose_update({}, {{Var{"x"}, val::integer(1)}});
  EXPECT_EQ(a.size(), 1u);
  Substitution b = compose_update(x_to(1), {{Var{"x"}, val::integer(2)}});
  EXPECT_TRUE(equal(b.at(Var{"x"}), val::integer(2)));
  Substitution c = compose_update(x_to(1), {{Var{"y"}, val::integer(2)}});
  EXPECT_EQ(c.size(), 2u);
  EXPECT_TRUE(equal(c.at(Var{"x"}), val::integer(1)));
  Substitution d = compose_update({}, {{Var{"x"}, val::integer(1)}, {Var{"x"}, val::integer(9)}});
  EXPECT_TRUE(equal(d.at(Var{"x"}), val::integer(9)));
}

TEST(Subscoped, Examples) {
  EXPECT_TRUE(subscoped({}, {}));
  EXPECT_FALSE(subscoped({Var{"x"}}, {}));
  EXPECT_TRUE(subscoped({Var{"x"}}, {{Var{"x"}, val::list({val::integer(1)})}}));
  EXPECT_FALSE(subscoped({Var{"x"}}, {{Var{"x"}, val::var("z")}}));
}
