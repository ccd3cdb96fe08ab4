#include <gtest/gtest.h>

#include "cerl/builtins.hpp"
#include "cerl/frontend.hpp"
#include "cerl/generate.hpp"

using namespace cerl;

namespace {

Redex call(const char* f, std::vector<ValuePtr> args) {
  return eval(frame_id::Call{val::atom("erlang"), val::atom(f)}, args);
}

// A singleton result, or the atom 'no_single_value' so comparisons fail
// cleanly.
ValuePtr single(const Redex& r) {
  const auto* vs = std::get_if<ValueSeq>(&r);
  if (!vs || vs->size() != 1) return val::atom("no_single_value");
  return vs->front();
}

std::string reason(const Redex& r) {
  const auto* x = std::get_if<Exception>(&r);
  if (!x) return "";
  const auto* a = std::get_if<val::Atom>(&x->reason->node);
  return a ? a->name : print(x->reason);
}

ValuePtr v(const char* text) { return parse_value(text); }

// Oracle for map construction: insert pairs one by one into an
// association list kept in key order, overriding equal keys.
ValuePtr map_oracle(const std::vector<ValuePtr>& flat) {
  std::vector<std::pair<ValuePtr, ValuePtr>> assoc;
  for (std::size_t i = 0; i + 1 < flat.size(); i += 2) {
    auto it = assoc.begin();
    while (it != assoc.end() && compare(it->first, flat[i]) < 0) ++it;
    if (it != assoc.end() && compare(it->first, flat[i]) == 0) {
      it->second = flat[i + 1];
    } else {
      assoc.insert(it, {flat[i], flat[i + 1]});
    }
  }
  return std::make_shared<const Value>(val::Map{assoc});
}

}  // namespace

TEST(Eval, Tuple) {
  std::vector<ValuePtr> args{val::integer(1), val::integer(2)};
  EXPECT_TRUE(equal(eval(frame_id::Tuple{}, args), Redex{ValueSeq{v("{1,2}")}}));
}

TEST(Eval, Values) {
  std::vector<ValuePtr> args{val::integer(1), val::atom("a")};
  EXPECT_TRUE(equal(eval(frame_id::Values{}, args), Redex{ValueSeq{val::integer(1), val::atom("a")}}));
}

TEST(Eval, Length) {
  EXPECT_TRUE(equal(single(call("length", {val::nil()})), val::integer(0)));
  EXPECT_TRUE(equal(single(call("length", {v("[1,2,3]")})), val::integer(3)));
  EXPECT_EQ(reason(call("length", {val::integer(0)})), "badarg");
  EXPECT_EQ(reason(call("length", {v("[1|2]")})), "badarg");
}

TEST(Eval, MapAgainstOracle) {
  std::vector<ValuePtr> args{val::integer(1), val::integer(2), val::integer(1), val::integer(3)};
  EXPECT_TRUE(equal(single(eval(frame_id::Map{}, args)), v("~{1=>3}~")));
  Generator gen(3);
  for (int i = 0; i < 500; ++i) {
    std::vector<ValuePtr> flat;
    std::size_t n = gen.below(6);
    for (std::size_t k = 0; k < 2 * n; ++k) flat.push_back(gen.value(1));
    ValuePtr got = single(eval(frame_id::Map{}, flat));
    EXPECT_TRUE(equal(got, map_oracle(flat)));
  }
}

TEST(Eval, OddMapIsBadarg) {
  std::vector<ValuePtr> args{val::integer(1)};
  EXPECT_EQ(reason(eval(frame_id::Map{}, args)), "badarg");
}

TEST(Eval, Arithmetic) {
  EXPECT_TRUE(equal(single(call("+", {val::integer(2), val::integer(3)})), val::integer(5)));
  EXPECT_TRUE(equal(single(call("-", {val::integer(2), val::integer(3)})), val::integer(-1)));
  EXPECT_TRUE(equal(single(call("*", {val::integer(-4), val::integer(3)})), val::integer(-12)));
  EXPECT_TRUE(equal(single(call("div", {val::integer(-7), val::integer(2)})), val::integer(-3)));
  EXPECT_TRUE(equal(single(call("rem", {val::integer(-7), val::integer(2)})), val::integer(-1)));
  EXPECT_TRUE(equal(single(call("-", {val::integer(4)})), val::integer(-4)));
  EXPECT_EQ(reason(call("div", {val::integer(1), val::integer(0)})), "badarith");
  EXPECT_EQ(reason(call("+", {val::atom("a"), val::integer(0)})), "badarg");
}

TEST(Eval, Comparisons) {
  EXPECT_TRUE(equal(single(call("<", {val::integer(1), val::atom("a")})), val::true_atom()));
  EXPECT_TRUE(equal(single(call(">=", {val::nil(), val::tuple({})})), val::false_atom()));
  EXPECT_TRUE(equal(single(call("/=", {val::integer(1), val::integer(2)})), val::true_atom()));
  EXPECT_TRUE(equal(single(call("=<", {val::integer(2), val::integer(2)})), val::true_atom()));
}

TEST(Eval, ListsAndTuples) {
  EXPECT_TRUE(equal(single(call("hd", {v("[1,2]")})), val::integer(1)));
  EXPECT_TRUE(equal(single(call("tl", {v("[1,2]")})), v("[2]")));
  EXPECT_EQ(reason(call("hd", {val::nil()})), "badarg");
  EXPECT_TRUE(equal(single(call("element", {val::integer(2), v("{'a','b'}")})), val::atom("b")));
  EXPECT_EQ(reason(call("element", {val::integer(3), v("{'a','b'}")})), "badarg");
  EXPECT_TRUE(equal(single(call("tuple_size", {v("{1,2,3}")})), val::integer(3)));
}

TEST(Eval, Booleans) {
  EXPECT_TRUE(equal(single(call("and", {val::true_atom(), val::false_atom()})), val::false_atom()));
  EXPECT_TRUE(equal(single(call("or", {val::true_atom(), val::false_atom()})), val::true_atom()));
  EXPECT_TRUE(equal(single(call("not", {val::false_atom()})), val::true_atom()));
  EXPECT_EQ(reason(call("not", {val::integer(1)})), "badarg");
}

TEST(Eval, UndefinedCall) {
  Redex r = call("no_such_function", {val::integer(1)});
  ASSERT_EQ(reason(r), "undef");
  EXPECT_TRUE(equal(std::get<Exception>(r).details, v("{'erlang','no_such_function',1}")));
}

TEST(Eval, ApplyClosure) {
  ValuePtr id = val::closure({}, {"X"}, expr::tuple({expr::var("X")}));
  std::vector<ValuePtr> args{val::integer(7)};
  Redex r = eval(frame_id::App{id}, args);
  ASSERT_TRUE(std::holds_alternative<ExprPtr>(r));
  EXPECT_TRUE(equal(std::get<ExprPtr>(r), expr::tuple({expr::integer(7)})));
  EXPECT_EQ(reason(eval(frame_id::App{id}, {})), "badarity");
  EXPECT_EQ(reason(eval(frame_id::App{val::integer(1)}, args)), "badfun");
}

TEST(Eval, ApplyReinstallsDefinitions) {
  ExprPtr body = expr::apply(expr::val(val::funid("f", 0)), {});
  Ext ext{FunDef{FunId{"f", 0}, {}, body}};
  ValuePtr clos = val::closure(ext, {}, body);
  Redex r = eval(frame_id::App{clos}, {});
  ASSERT_TRUE(std::holds_alternative<ExprPtr>(r));
  EXPECT_TRUE(is_closed(*std::get<ExprPtr>(r)));
}

TEST(Eval, PrimOps) {
  std::vector<ValuePtr> fc{v("{'function_clause',1}")};
  Redex r = eval(frame_id::PrimOp{"match_fail"}, fc);
  ASSERT_EQ(reason(r), "function_clause");
  std::vector<ValuePtr> raise{val::atom("throw"), val::atom("oops")};
  Redex t = eval(frame_id::PrimOp{"raise"}, raise);
  ASSERT_TRUE(std::holds_alternative<Exception>(t));
  EXPECT_EQ(std::get<Exception>(t).cls, ExcClass::Throw);
  EXPECT_EQ(reason(eval(frame_id::PrimOp{"nope"}, {})), "undef");
}

TEST(Eval, CustomTable) {
  BifTable t;
  t.add("m", "one", 0, [](std::span<const ValuePtr>) { return Result{ValueSeq{val::integer(1)}}; });
  EXPECT_EQ(t.size(), 1u);
  Redex r = eval(frame_id::Call{val::atom("m"), val::atom("one")}, {}, t);
  EXPECT_TRUE(equal(single(r), val::integer(1)));
}

TEST(BifEqual, Examples) {
  EXPECT_TRUE(equal(bif_equal(val::integer(0), val::integer(0)), val::true_atom()));
  EXPECT_TRUE(equal(bif_equal(val::atom("a"), val::atom("b")), val::false_atom()));
  EXPECT_TRUE(equal(bif_equal(v("[1]"), v("[1]")), val::true_atom()));
  EXPECT_TRUE(equal(bif_equal(val::integer(5), val::integer(5)), val::true_atom()));
  EXPECT_TRUE(equal(bif_equal(v("{1,'a'}"), v("{1,'a'}")), val::true_atom()));
}

TEST(Exceptions, Builders) {
  Exception x = if_clause_exception();
  EXPECT_EQ(print(x), "{'error','if_clause',{}}^X");
  EXPECT_EQ(print(error_exception(val::atom("badarg"), val::integer(0))), "{'error','badarg',0}^X");
}
