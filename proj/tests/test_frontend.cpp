#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "cerl/corpus.hpp"
#include "cerl/frontend.hpp"
#include "cerl/generate.hpp"
#include "cerl/report.hpp"

using namespace cerl;

namespace {

std::string slurp(const std::string& name) {
  std::ifstream in(std::string(CERL_DATA_DIR) + "/" + name);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

ParseError parse_failure(std::string_view text) {
  try {
    parse_expr(text);
  } catch (const ParseError& e) {
    return e;
  }
  ADD_FAILURE() << "parsed: " << text;
  return ParseError({}, "");
}

}  // namespace

TEST(Parse, Examples) {
  EXPECT_TRUE(equal(parse_expr("'ok'"), expr::atom("ok")));
  EXPECT_TRUE(equal(parse_expr("let <X> = 1 in X"), expr::let({"X"}, expr::integer(1), expr::var("X"))));
  EXPECT_TRUE(equal(parse_expr("let X = 1 in X"), expr::let({"X"}, expr::integer(1), expr::var("X"))));
  EXPECT_TRUE(equal(parse_expr("-7"), expr::integer(-7)));
  EXPECT_TRUE(equal(parse_expr("'f'/2"), expr::val(val::funid("f", 2))));
  EXPECT_TRUE(equal(parse_expr("'with space'"), expr::atom("with space")));
  EXPECT_TRUE(equal(parse_expr("'it\\'s'"), expr::atom("it's")));
}

TEST(Parse, LengthGuardFunction) {
  SourceUnit u = parse_unit(corpus::kLengthGuard);
  ASSERT_EQ(u.definitions.size(), 1u);
  const FunDef& f = u.definitions[0].def;
  EXPECT_EQ(f.id, (FunId{"f", 1}));
  EXPECT_EQ(f.params.size(), 1u);
  const auto* c = std::get_if<expr::Case>(&f.body->node);
  ASSERT_TRUE(c);
  EXPECT_EQ(c->clauses.size(), 3u);
  EXPECT_EQ(u.definitions[0].pos.line, 3u);
}

TEST(Parse, DataFilesMatchCorpus) {
  EXPECT_EQ(slurp("length_guard.core"), corpus::kLengthGuard);
  EXPECT_EQ(slurp("length_pattern.core"), corpus::kLengthPattern);
  EXPECT_EQ(slurp("length_pattern_swapped.core"), corpus::kLengthPatternSwapped);
  for (const char* f : {"countdown.core", "loop.core"}) EXPECT_NO_THROW(parse_unit(slurp(f))) << f;
}

TEST(Parse, TwoVariableCatchGetsThird) {
  ExprPtr e = parse_expr("try 1 of <X> -> X catch <C, R> -> R");
  const auto& t = std::get<expr::Try>(e->node);
  ASSERT_EQ(t.catch_vars.size(), 3u);
  EXPECT_NE(t.catch_vars[2], "C");
  EXPECT_NE(t.catch_vars[2], "R");
}

TEST(Parse, GuardDefaultsToTrue) {
  EXPECT_TRUE(equal(parse_expr("case 1 of <X> -> X end"), parse_expr("case 1 of <X> when 'true' -> X end")));
}

TEST(Parse, Comments) {
  EXPECT_TRUE(equal(parse_expr("% leading\n{1, % inner\n 2}"), parse_expr("{1,2}")));
}

TEST(Parse, Errors) {
  ParseError e = parse_failure("{1,\n  2");
  EXPECT_EQ(e.pos.line, 2u);
  EXPECT_FALSE(e.expected.empty());
  ParseError a = parse_failure("'a' -| ['compiler_generated']");
  EXPECT_NE(a.message.find("strip annotations upstream"), std::string::npos);
  parse_failure("ok");
  parse_failure("case 1 of end end");
  parse_failure("'a' 'b'");
}

TEST(Parse, Values) {
  EXPECT_TRUE(equal(parse_value("[1,2|3]"), val::cons(val::integer(1), val::cons(val::integer(2), val::integer(3)))));
  EXPECT_TRUE(equal(parse_value("~{2=>'b',1=>'a'}~"),
                    val::map({{val::integer(1), val::atom("a")}, {val::integer(2), val::atom("b")}})));
  EXPECT_THROW(parse_value("X"), ParseError);
  EXPECT_THROW(parse_value("fun () -> 1"), ParseError);
}

TEST(Parse, FunIds) {
  EXPECT_EQ(parse_funid("f/1"), (FunId{"f", 1}));
  EXPECT_EQ(parse_funid("'main'/0"), (FunId{"main", 0}));
  EXPECT_FALSE(parse_funid("f").has_value());
  EXPECT_FALSE(parse_funid("f/x").has_value());
}

TEST(SourceUnit, EntrySelection) {
  SourceUnit u = parse_unit(slurp("countdown.core"));
  RunOutcome a = eval_star({FrameStack{}, u.entry_expr({val::integer(4)})}, 10000);
  EXPECT_TRUE(equal(std::get<run::Completed>(a).result, Result{ValueSeq{val::integer(4)}}));
  RunOutcome b = eval_star({FrameStack{}, u.entry_expr({val::integer(2), val::integer(10)}, FunId{"count", 2})}, 10000);
  EXPECT_TRUE(equal(std::get<run::Completed>(b).result, Result{ValueSeq{val::integer(12)}}));
  EXPECT_THROW(u.entry_expr({}, FunId{"nope", 0}), std::invalid_argument);
  SourceUnit bare = parse_unit("fun (X) -> {X}");
  EXPECT_FALSE(bare.has_definitions());
  EXPECT_TRUE(is_closed(*bare.entry_expr({val::integer(1)})));
}

TEST(Print, Examples) {
  EXPECT_EQ(print(expr::integer(1)), "1");
  EXPECT_EQ(print(ValueSeq{val::integer(1), val::integer(2)}), "<1,2>");
  EXPECT_EQ(print(Exception{ExcClass::Error, val::atom("if_clause"), val::tuple({})}), "{'error','if_clause',{}}^X");
  EXPECT_EQ(print(parse_value("[1,2|3]")), "[1,2|3]");
  EXPECT_EQ(print(parse_value("'it\\'s'")), "'it\\'s'");
  EXPECT_EQ(print(Configuration{FrameStack{}, Box{}}), "⟨ε, □⟩");
}

TEST(Print, RoundTripGenerated) {
  Generator gen(99);
  for (int i = 0; i < 2000; ++i) {
    ExprPtr e = gen.source_expr(4);
    std::string text = print(e);
    ExprPtr back = parse_expr(text);
    ASSERT_TRUE(equal(e, back)) << text;
    EXPECT_EQ(print(back), text);
  }
}

TEST(Print, RoundTripDataFiles) {
  for (const char* f : {"length_guard.core", "length_pattern.core", "countdown.core", "loop.core"}) {
    SourceUnit u = parse_unit(slurp(f));
    ExprPtr e = u.entry_expr({});
    EXPECT_TRUE(equal(parse_expr(print(e)), e)) << f;
  }
}

TEST(Report, TraceRecords) {
  SourceUnit u = parse_unit(corpus::kLengthGuard);
  Trace t;
  RunOutcome o = eval_star({FrameStack{}, u.entry_expr({val::integer(0)})}, 10000, &t);
  long last = -1;
  for (const auto& e : t) {
    nlohmann::json j = to_json(e);
    for (const char* key : {"step", "rule", "stack_depth", "redex_text"}) ASSERT_TRUE(j.contains(key)) << key;
    EXPECT_GT(j["step"].get<long>(), last);
    last = j["step"].get<long>();
    EXPECT_TRUE(rule_from_name(j["rule"].get<std::string>()).has_value());
  }
  nlohmann::json fin = final_record(o);
  EXPECT_GT(fin["step"].get<long>(), last);
  EXPECT_TRUE(fin["rule"].is_null());
  EXPECT_EQ(fin["outcome"], "completed");
  EXPECT_EQ(fin["redex_text"], print(std::get<run::Completed>(o).result));
}

TEST(Report, Verdict) {
  EquivVerdict v;
  v.kind = VerdictKind::Inequivalent;
  v.seed = 42;
  v.witness = Witness{FrameStack{}, {{Var{"X"}, val::integer(1)}}, {}, {}};
  nlohmann::json j = to_json(v);
  EXPECT_EQ(j["verdict"], "Inequivalent");
  EXPECT_EQ(j["seed"], 42);
  EXPECT_EQ(j["witness"]["stack"], "ε");
  EXPECT_EQ(j["witness"]["substitution"], "{X ↦ 1}");
}
