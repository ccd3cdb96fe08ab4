#include <gtest/gtest.h>

#include "cerl/frontend.hpp"
#include "cerl/generate.hpp"
#include "cerl/matching.hpp"
#include "cerl/subst.hpp"

using namespace cerl;

namespace {

// Independent oracle: instantiate a pattern with the bindings and compare
// structurally. Map patterns only need their listed keys present.
bool instance_of(const PatternPtr& p, const ValuePtr& v, const Substitution& s) {
  return std::visit(
      [&](const auto& n) -> bool {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, pat::Var>) {
          auto it = s.find(Var{n.id});
          return it != s.end() && equal(it->second, v);
        } else if constexpr (std::is_same_v<T, pat::Int>) {
          const auto* i = std::get_if<val::Int>(&v->node);
          return i && i->value == n.value;
        } else if constexpr (std::is_same_v<T, pat::Atom>) {
          const auto* a = std::get_if<val::Atom>(&v->node);
          return a && a->name == n.name;
        } else if constexpr (std::is_same_v<T, pat::Nil>) {
          return std::holds_alternative<val::Nil>(v->node);
        } else if constexpr (std::is_same_v<T, pat::Cons>) {
          const auto* c = std::get_if<val::Cons>(&v->node);
          return c && instance_of(n.head, c->head, s) && instance_of(n.tail, c->tail, s);
        } else if constexpr (std::is_same_v<T, pat::Tuple>) {
          const auto* t = std::get_if<val::Tuple>(&v->node);
          if (!t || t->elems.size() != n.elems.size()) return false;
          for (std::size_t i = 0; i < n.elems.size(); ++i) {
            if (!instance_of(n.elems[i], t->elems[i], s)) return false;
          }
          return true;
        } else {
          const auto* m = std::get_if<val::Map>(&v->node);
          if (!m) return false;
          for (const auto& [pk, pv] : n.pairs) {
            bool found = false;
            for (const auto& [k, x] : m->pairs) {
              if (instance_of(pk, k, s) && instance_of(pv, x, s)) found = true;
            }
            if (!found) return false;
          }
          return true;
        }
      },
      p->node);
}

}  // namespace

TEST(Vars, Examples) {
  EXPECT_TRUE(vars(*pat::integer(1)).empty());
  EXPECT_EQ(vars(*pat::var("x")), std::set<std::string>{"x"});
  PatternPtr p = pat::tuple({pat::var("x"), pat::cons(pat::var("y"), pat::nil())});
  EXPECT_EQ(vars(*p), (std::set<std::string>{"x", "y"}));
}

TEST(IsMatch, Examples) {
  EXPECT_TRUE(is_match({pat::var("x")}, {val::integer(5)}));
  EXPECT_FALSE(is_match({pat::integer(0)}, {val::integer(1)}));
  EXPECT_TRUE(is_match({pat::tuple({pat::var("x"), pat::integer(2)})},
                       {val::tuple({val::integer(1), val::integer(2)})}));
  EXPECT_FALSE(is_match({pat::var("x")}, {val::integer(1), val::integer(2)}));
}

TEST(Match, Examples) {
  auto s = match({pat::var("x")}, {val::integer(5)});
  ASSERT_TRUE(s);
  EXPECT_TRUE(equal(s->at(Var{"x"}), val::integer(5)));
  EXPECT_FALSE(match({pat::integer(0)}, {val::integer(1)}));
  auto c = match({pat::cons(pat::var("h"), pat::var("t"))}, {val::list({val::integer(1)})});
  ASSERT_TRUE(c);
  EXPECT_TRUE(equal(c->at(Var{"h"}), val::integer(1)));
  EXPECT_TRUE(equal(c->at(Var{"t"}), val::nil()));
}

TEST(Match, RepeatedVariableNeedsEqualValues) {
  std::vector<PatternPtr> ps{pat::var("X"), pat::var("X")};
  EXPECT_TRUE(is_match(ps, {val::integer(1), val::integer(1)}));
  EXPECT_FALSE(is_match(ps, {val::integer(1), val::integer(2)}));
}

TEST(Match, MapPatternsArePartial) {
  ValuePtr m = val::map({{val::integer(1), val::atom("a")}, {val::integer(2), val::atom("b")}});
  auto s = match({pat::map({{pat::integer(2), pat::var("V")}})}, {m});
  ASSERT_TRUE(s);
  EXPECT_TRUE(equal(s->at(Var{"V"}), val::atom("b")));
  EXPECT_FALSE(is_match({pat::map({{pat::integer(3), pat::var("V")}})}, {m}));
}

TEST(Match, ClosuresOnlyMatchVariables) {
  ValuePtr c = val::closure({}, {}, expr::atom("ok"));
  EXPECT_TRUE(is_match({pat::var("F")}, {c}));
  EXPECT_FALSE(is_match({pat::atom("ok")}, {c}));
}

TEST(Match, AgreesWithOracleOnGeneratedPairs) {
  Generator gen(7);
  std::size_t matched = 0;
  for (int i = 0; i < 5000; ++i) {
    ValuePtr v = gen.value(3, true);
    PatternPtr p;
    if (i % 2 == 0) {
      p = gen.pattern_for(v, 0.3);
    } else {
      std::vector<std::string> bound;
      p = gen.pattern(2, bound);
    }
    auto s = match({p}, {v});
    ASSERT_EQ(s.has_value(), is_match({p}, {v})) << print(p) << " vs " << print(v);
    if (i % 2 == 0) ASSERT_TRUE(s) << print(p) << " vs " << print(v);
    if (s) {
      ++matched;
      EXPECT_EQ(s->size(), vars(*p).size());
      EXPECT_TRUE(instance_of(p, v, *s)) << print(p) << " vs " << print(v);
    }
  }
  EXPECT_GT(matched, 2500u);
}

TEST(PatternValue, GroundOnly) {
  EXPECT_TRUE(equal(pattern_value(*pat::tuple({pat::integer(1), pat::nil()})),
                    val::tuple({val::integer(1), val::nil()})));
  EXPECT_EQ(pattern_value(*pat::var("X")), nullptr);
}
