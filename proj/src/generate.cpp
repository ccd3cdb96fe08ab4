#include "cerl/generate.hpp"

#include <array>
#include <utility>

namespace cerl {

namespace {

constexpr std::array<const char*, 6> kAtoms = {"a", "b", "ok", "true", "false", "error"};

struct BifSig {
  const char* name;
  std::size_t arity;
};

constexpr std::array<BifSig, 14> kBifs = {{
    {"+", 2}, {"-", 2}, {"*", 2}, {"div", 2}, {"==", 2}, {"/=", 2}, {"<", 2},
    {">=", 2}, {"length", 1}, {"hd", 1}, {"tl", 1}, {"element", 2}, {"tuple_size", 1}, {"not", 1},
}};

constexpr std::array<const char*, 3> kClasses = {"throw", "exit", "error"};

std::vector<std::string> with(std::vector<std::string> scope, const std::vector<std::string>& more) {
  scope.insert(scope.end(), more.begin(), more.end());
  return scope;
}

}  // namespace

std::size_t Generator::below(std::size_t n) {
  if (n <= 1) return 0;
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_);
}

bool Generator::chance(double p) { return std::bernoulli_distribution(p)(rng_); }

std::string Generator::fresh_var() { return "X" + std::to_string(++counter_); }

ValuePtr Generator::atom() { return val::atom(kAtoms[below(kAtoms.size())]); }

ValuePtr Generator::small_int() {
  return val::integer(static_cast<long>(below(9)) - 3);
}

ValuePtr Generator::value(int depth, bool closures) {
  std::size_t kinds = depth <= 0 ? 3 : (closures ? 7 : 6);
  switch (below(kinds)) {
    case 0: return small_int();
    case 1: return atom();
    case 2: return val::nil();
    case 3: return val::cons(value(depth - 1, closures), value(depth - 1, closures));
    case 4: {
      std::vector<ValuePtr> elems;
      for (std::size_t i = below(4); i > 0; --i) elems.push_back(value(depth - 1, closures));
      return val::tuple(std::move(elems));
    }
    case 5: {
      std::vector<std::pair<ValuePtr, ValuePtr>> pairs;
      for (std::size_t i = below(3); i > 0; --i) pairs.emplace_back(value(depth - 1, false), value(depth - 1, closures));
      return val::map(std::move(pairs));
    }
    default: return closure(below(3), depth - 1);
  }
}

ValuePtr Generator::closure(std::size_t arity, int depth) {
  std::vector<std::string> params;
  for (std::size_t i = 0; i < arity; ++i) params.push_back(fresh_var());
  return val::closure({}, params, expr(std::max(depth, 0), params));
}

PatternPtr Generator::pattern(int depth, std::vector<std::string>& bound) {
  std::size_t kinds = depth <= 0 ? 4 : 7;
  switch (below(kinds)) {
    case 0: {
      const auto& v = std::get<val::Int>(small_int()->node);
      return pat::integer(v.value);
    }
    case 1: return pat::atom(kAtoms[below(kAtoms.size())]);
    case 2: return pat::nil();
    case 3: {
      if (!bound.empty() && chance(0.15)) return pat::var(bound[below(bound.size())]);
      std::string x = fresh_var();
      bound.push_back(x);
      return pat::var(x);
    }
    case 4: {
      auto h = pattern(depth - 1, bound);
      return pat::cons(h, pattern(depth - 1, bound));
    }
    case 5: {
      std::vector<PatternPtr> elems;
      for (std::size_t i = below(3); i > 0; --i) elems.push_back(pattern(depth - 1, bound));
      return pat::tuple(std::move(elems));
    }
    default: {
      std::vector<std::pair<PatternPtr, PatternPtr>> pairs;
      for (std::size_t i = below(2) + 1; i > 0; --i) {
        PatternPtr key = chance(0.5) ? pat::atom(kAtoms[below(kAtoms.size())])
                                     : pat::integer(static_cast<long>(below(3)));
        pairs.emplace_back(key, pattern(depth - 1, bound));
      }
      return pat::map(std::move(pairs));
    }
  }
}

PatternPtr Generator::pattern_for(const ValuePtr& v, double p_var) {
  if (chance(p_var)) return pat::var(fresh_var());
  return std::visit(
      [&](const auto& n) -> PatternPtr {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, val::Int>) {
          return pat::integer(n.value);
        } else if constexpr (std::is_same_v<T, val::Atom>) {
          return pat::atom(n.name);
        } else if constexpr (std::is_same_v<T, val::Nil>) {
          return pat::nil();
        } else if constexpr (std::is_same_v<T, val::Cons>) {
          auto h = pattern_for(n.head, p_var);
          return pat::cons(h, pattern_for(n.tail, p_var));
        } else if constexpr (std::is_same_v<T, val::Tuple>) {
          std::vector<PatternPtr> elems;
          for (const auto& e : n.elems) elems.push_back(pattern_for(e, p_var));
          return pat::tuple(std::move(elems));
        } else if constexpr (std::is_same_v<T, val::Map>) {
          std::vector<std::pair<PatternPtr, PatternPtr>> pairs;
          for (const auto& [k, x] : n.pairs) {
            if (contains_closure(*k)) return pat::var(fresh_var());
            pairs.emplace_back(pattern_for(k, 0.0), pattern_for(x, p_var));
          }
          return pat::map(std::move(pairs));
        } else {
          return pat::var(fresh_var());
        }
      },
      v->node);
}

ExprPtr Generator::leaf(const std::vector<std::string>& scope) {
  if (!scope.empty() && chance(0.5)) return expr::var(scope[below(scope.size())]);
  switch (below(3)) {
    case 0: return expr::val(small_int());
    case 1: return expr::val(atom());
    default: return expr::val(val::nil());
  }
}

std::vector<ExprPtr> Generator::exprs(std::size_t n, int depth, const std::vector<std::string>& scope) {
  std::vector<ExprPtr> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(expr(depth, scope));
  return out;
}

ExprPtr Generator::bif_call(int depth, const std::vector<std::string>& scope) {
  const BifSig& sig = kBifs[below(kBifs.size())];
  return expr::call("erlang", sig.name, exprs(sig.arity, depth, scope));
}

std::vector<Clause> Generator::clauses(std::size_t arity, int depth, const std::vector<std::string>& scope) {
  std::vector<Clause> out;
  for (std::size_t n = below(2) + 1; n > 0; --n) {
    std::vector<std::string> bound;
    std::vector<PatternPtr> ps;
    for (std::size_t i = 0; i < arity; ++i) ps.push_back(pattern(1, bound));
    auto inner = with(scope, bound);
    ExprPtr guard = chance(0.6) ? expr::atom("true")
                                : expr::call("erlang", chance(0.5) ? "==" : "<",
                                             {leaf(inner), leaf(inner)});
    out.push_back(Clause{std::move(ps), guard, expr(depth, inner)});
  }
  if (chance(0.7)) {
    std::vector<PatternPtr> ps;
    std::vector<std::string> bound;
    for (std::size_t i = 0; i < arity; ++i) {
      bound.push_back(fresh_var());
      ps.push_back(pat::var(bound.back()));
    }
    out.push_back(Clause{std::move(ps), expr::atom("true"), expr(depth, with(scope, bound))});
  }
  return out;
}

ExprPtr Generator::expr(int depth, const std::vector<std::string>& scope) {
  if (depth <= 0) return leaf(scope);
  const int d = depth - 1;
  switch (below(15)) {
    case 0: return leaf(scope);
    case 1: return expr::cons(expr(d, scope), expr(d, scope));
    case 2: return expr::tuple(exprs(below(3), d, scope));
    case 3: {
      std::vector<std::pair<ExprPtr, ExprPtr>> pairs;
      for (std::size_t i = below(3); i > 0; --i) pairs.emplace_back(expr(d, scope), expr(d, scope));
      return expr::map(std::move(pairs));
    }
    case 4:
    case 5: return bif_call(d, scope);
    case 6: {
      if (chance(0.5)) {
        return expr::primop("raise", {expr::atom(kClasses[below(kClasses.size())]), expr(d, scope)});
      }
      return expr::primop("match_fail", {expr::tuple({expr::atom("function_clause"), expr(d, scope)})});
    }
    case 7: {
      std::vector<std::string> params;
      for (std::size_t i = below(3); i > 0; --i) params.push_back(fresh_var());
      return expr::fun(params, expr(d, with(scope, params)));
    }
    case 8: {
      std::size_t arity = below(3);
      std::vector<std::string> params;
      for (std::size_t i = 0; i < arity; ++i) params.push_back(fresh_var());
      std::size_t given = chance(0.9) ? arity : below(3);
      ExprPtr fn = chance(0.9) ? expr::fun(params, expr(d, with(scope, params))) : leaf(scope);
      return expr::apply(fn, exprs(given, d, scope));
    }
    case 9: return expr::case_(expr(d, scope), clauses(1, d, scope));
    case 10: {
      if (chance(0.3)) {
        std::vector<std::string> xs{fresh_var(), fresh_var()};
        return expr::let(xs, expr::values(exprs(2, d, scope)), expr(d, with(scope, xs)));
      }
      std::vector<std::string> xs{fresh_var()};
      return expr::let(xs, expr(d, scope), expr(d, with(scope, xs)));
    }
    case 11: return expr::seq(expr(d, scope), expr(d, scope));
    case 12: {
      std::size_t arity = below(2);
      std::vector<std::string> params;
      for (std::size_t i = 0; i < arity; ++i) params.push_back(fresh_var());
      FunDef def{FunId{"f" + std::to_string(++counter_), arity}, params, expr(d, with(scope, params))};
      ExprPtr call = expr::apply(expr::val(val::funid(def.id.atom, arity)), exprs(arity, d, scope));
      return expr::letrec({def}, call);
    }
    case 13: {
      std::vector<std::string> xs{fresh_var()};
      std::vector<std::string> cs{fresh_var(), fresh_var(), fresh_var()};
      return expr::try_(expr(d, scope), xs, expr(d, with(scope, xs)), cs, expr(d, with(scope, cs)));
    }
    default: return expr::values({expr(d, scope)});
  }
}

PatternPtr Generator::source_pattern(int depth) {
  std::vector<std::string> bound;
  return pattern(depth, bound);
}

ExprPtr Generator::source_expr(int depth) {
  auto small_leaf = [&]() -> ExprPtr {
    switch (below(6)) {
      case 0: return expr::val(val::integer(static_cast<long>(below(2001)) - 1000));
      case 1: return expr::val(atom());
      case 2: return expr::val(val::nil());
      case 3: return expr::val(val::funid("g", below(3)));
      case 4: return expr::atom(chance(0.5) ? "with space" : "quote'in\\side");
      default: return expr::var(chance(0.2) ? "_" + std::to_string(below(5)) : "V" + std::to_string(below(5)));
    }
  };
  if (depth <= 0) return small_leaf();
  const int d = depth - 1;
  auto many = [&](std::size_t n) {
    std::vector<ExprPtr> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(source_expr(d));
    return out;
  };
  auto names = [&](std::size_t n) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back("V" + std::to_string(below(5)));
    return out;
  };
  auto source_clauses = [&](std::size_t arity) {
    std::vector<Clause> out;
    for (std::size_t n = below(3) + 1; n > 0; --n) {
      std::vector<PatternPtr> ps;
      for (std::size_t i = 0; i < arity; ++i) ps.push_back(source_pattern(2));
      out.push_back(Clause{std::move(ps), source_expr(d), source_expr(d)});
    }
    return out;
  };
  switch (below(15)) {
    case 0: return small_leaf();
    case 1: return expr::fun(names(below(3)), source_expr(d));
    case 2: return expr::values(many(below(3)));
    case 3: return expr::cons(source_expr(d), source_expr(d));
    case 4: return expr::tuple(many(below(3)));
    case 5: {
      std::vector<std::pair<ExprPtr, ExprPtr>> pairs;
      for (std::size_t i = below(3); i > 0; --i) pairs.emplace_back(source_expr(d), source_expr(d));
      return expr::map(std::move(pairs));
    }
    case 6: return expr::call(source_expr(d), source_expr(d), many(below(3)));
    case 7: return expr::primop(chance(0.5) ? "raise" : "match_fail", many(below(3)));
    case 8: return expr::apply(source_expr(d), many(below(3)));
    case 9: {
      std::size_t arity = below(3);
      ExprPtr scrutinee = arity == 1 ? source_expr(d) : expr::values(many(arity));
      return expr::case_(scrutinee, source_clauses(arity));
    }
    case 10: return expr::let(names(below(3)), source_expr(d), source_expr(d));
    case 11: return expr::seq(source_expr(d), source_expr(d));
    case 12: {
      Ext ext;
      for (std::size_t i = below(2) + 1; i > 0; --i) {
        std::size_t arity = below(3);
        ext.push_back(FunDef{FunId{"h" + std::to_string(i), arity}, names(arity), source_expr(d)});
      }
      return expr::letrec(std::move(ext), source_expr(d));
    }
    case 13: return expr::try_(source_expr(d), names(below(3)), source_expr(d), names(3), source_expr(d));
    default: return expr::case_(source_expr(d), source_clauses(1));
  }
}

Frame Generator::frame(int depth) {
  const std::vector<std::string> none;
  switch (below(11)) {
    case 0: {
      FrameId id;
      std::size_t total = below(4) + 1;
      switch (below(6)) {
        case 0: id = frame_id::Tuple{}; break;
        case 1: id = frame_id::Values{}; total = 1; break;
        case 2:
          id = frame_id::Map{};
          total = 2 * (below(2) + 1);
          break;
        case 3: {
          const BifSig& sig = kBifs[below(kBifs.size())];
          id = frame_id::Call{val::atom("erlang"), val::atom(sig.name)};
          total = sig.arity;
          break;
        }
        case 4: id = frame_id::PrimOp{"raise"}; total = 2; break;
        default: {
          id = frame_id::App{closure(total, depth - 1)};
          break;
        }
      }
      std::size_t hole = below(total);
      frame::Params p{id, {}, {}};
      for (std::size_t i = 0; i < hole; ++i) p.done.push_back(value(depth - 1));
      for (std::size_t i = hole + 1; i < total; ++i) p.todo.push_back(expr(depth - 1, none));
      if (std::holds_alternative<frame_id::PrimOp>(id) && hole > 0) p.done[0] = val::atom(kClasses[below(3)]);
      return p;
    }
    case 1: return frame::ConsTail{expr(depth - 1, none)};
    case 2: return frame::ConsHead{value(depth - 1)};
    case 3: return frame::CallModule{expr::atom(kBifs[0].name), exprs(2, depth - 1, none)};
    case 4: {
      const BifSig& sig = kBifs[below(kBifs.size())];
      return frame::CallFunction{val::atom("erlang"), exprs(sig.arity, depth - 1, none)};
    }
    case 5: return frame::AppFn{exprs(below(3), depth - 1, none)};
    case 6: return frame::CaseScrutinee{clauses(1, depth - 1, none)};
    case 7: {
      std::vector<std::string> bound;
      std::vector<PatternPtr> ps{pattern(1, bound)};
      return frame::CaseGuard{{value(depth - 1)}, ps, expr(depth - 1, none), clauses(1, depth - 1, none)};
    }
    case 8: {
      std::vector<std::string> xs{fresh_var()};
      return frame::LetBind{xs, expr(depth - 1, xs)};
    }
    case 9: return frame::SeqFirst{expr(depth - 1, none)};
    default: {
      std::vector<std::string> xs{fresh_var()};
      std::vector<std::string> cs{fresh_var(), fresh_var(), fresh_var()};
      return frame::TryFirst{xs, expr(depth - 1, xs), cs, expr(depth - 1, cs)};
    }
  }
}

FrameStack Generator::stack(std::size_t max_frames, int depth) {
  FrameStack k;
  for (std::size_t n = below(max_frames + 1); n > 0; --n) k.push(frame(depth));
  return k;
}

}  // namespace cerl
