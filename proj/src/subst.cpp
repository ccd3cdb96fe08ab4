#include "cerl/subst.hpp"

#include <algorithm>

namespace cerl {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

class Substituter {
 public:
  ValuePtr value(const ValuePtr& v, const Substitution& s) {
    if (s.empty()) return v;
    return std::visit(
        overloaded{
            [&](const Var& x) -> ValuePtr { return lookup(Name{x}, v, s); },
            [&](const FunId& f) -> ValuePtr { return lookup(Name{f}, v, s); },
            [&](const val::Closure& c) -> ValuePtr {
              Substitution inner = without(s, names_of(c.ext));
              Ext ext = this->ext(c.ext, inner);
              inner = without_vars(inner, c.params);
              ExprPtr body = expression(c.body, inner);
              if (body == c.body && same_ext(ext, c.ext)) return v;
              return val::closure(std::move(ext), c.params, std::move(body));
            },
            [&](const val::Cons& c) -> ValuePtr {
              auto h = value(c.head, s);
              auto t = value(c.tail, s);
              if (h == c.head && t == c.tail) return v;
              return val::cons(std::move(h), std::move(t));
            },
            [&](const val::Tuple& t) -> ValuePtr {
              auto elems = values(t.elems, s);
              if (elems == t.elems) return v;
              return val::tuple(std::move(elems));
            },
            [&](const val::Map& m) -> ValuePtr {
              bool changed = false;
              std::vector<std::pair<ValuePtr, ValuePtr>> pairs;
              pairs.reserve(m.pairs.size());
              for (const auto& [k, x] : m.pairs) {
                auto k2 = value(k, s);
                auto x2 = value(x, s);
                changed = changed || k2 != k || x2 != x;
                pairs.emplace_back(std::move(k2), std::move(x2));
              }
              if (!changed) return v;
              return val::map(std::move(pairs));
            },
            [&](const auto&) -> ValuePtr { return v; },
        },
        v->node);
  }

  ExprPtr expression(const ExprPtr& e, const Substitution& s) {
    if (s.empty()) return e;
    return std::visit(
        overloaded{
            [&](const ValuePtr& v) -> ExprPtr {
              auto v2 = value(v, s);
              return v2 == v ? e : expr::val(std::move(v2));
            },
            [&](const expr::Fun& f) -> ExprPtr {
              auto body = expression(f.body, without_vars(s, f.params));
              return body == f.body ? e : expr::fun(f.params, std::move(body));
            },
            [&](const expr::Values& v) -> ExprPtr {
              auto elems = exprs(v.elems, s);
              return elems == v.elems ? e : expr::values(std::move(elems));
            },
            [&](const expr::Cons& c) -> ExprPtr {
              auto h = expression(c.head, s);
              auto t = expression(c.tail, s);
              return (h == c.head && t == c.tail) ? e : expr::cons(std::move(h), std::move(t));
            },
            [&](const expr::Tuple& t) -> ExprPtr {
              auto elems = exprs(t.elems, s);
              return elems == t.elems ? e : expr::tuple(std::move(elems));
            },
            [&](const expr::Map& m) -> ExprPtr {
              bool changed = false;
              std::vector<std::pair<ExprPtr, ExprPtr>> pairs;
              pairs.reserve(m.pairs.size());
              for (const auto& [k, x] : m.pairs) {
                auto k2 = expression(k, s);
                auto x2 = expression(x, s);
                changed = changed || k2 != k || x2 != x;
                pairs.emplace_back(std::move(k2), std::move(x2));
              }
              return changed ? expr::map(std::move(pairs)) : e;
            },
            [&](const expr::Call& c) -> ExprPtr {
              auto m = expression(c.module, s);
              auto f = expression(c.function, s);
              auto args = exprs(c.args, s);
              if (m == c.module && f == c.function && args == c.args) return e;
              return expr::call(std::move(m), std::move(f), std::move(args));
            },
            [&](const expr::PrimOp& p) -> ExprPtr {
              auto args = exprs(p.args, s);
              return args == p.args ? e : expr::primop(p.name, std::move(args));
            },
            [&](const expr::Apply& a) -> ExprPtr {
              auto f = expression(a.function, s);
              auto args = exprs(a.args, s);
              if (f == a.function && args == a.args) return e;
              return expr::apply(std::move(f), std::move(args));
            },
            [&](const expr::Case& c) -> ExprPtr {
              auto scrutinee = expression(c.scrutinee, s);
              bool changed = scrutinee != c.scrutinee;
              std::vector<Clause> clauses;
              clauses.reserve(c.clauses.size());
              for (const auto& cl : c.clauses) {
                clauses.push_back(clause(cl, s));
                changed = changed || clauses.back().guard != cl.guard ||
                          clauses.back().body != cl.body;
              }
              return changed ? expr::case_(std::move(scrutinee), std::move(clauses)) : e;
            },
            [&](const expr::Let& l) -> ExprPtr {
              auto bound = expression(l.bound, s);
              auto body = expression(l.body, without_vars(s, l.vars));
              if (bound == l.bound && body == l.body) return e;
              return expr::let(l.vars, std::move(bound), std::move(body));
            },
            [&](const expr::Seq& q) -> ExprPtr {
              auto a = expression(q.first, s);
              auto b = expression(q.second, s);
              return (a == q.first && b == q.second) ? e : expr::seq(std::move(a), std::move(b));
            },
            [&](const expr::LetRec& l) -> ExprPtr {
              Substitution inner = without(s, names_of(l.ext));
              Ext ext = this->ext(l.ext, inner);
              auto body = expression(l.body, inner);
              if (body == l.body && same_ext(ext, l.ext)) return e;
              return expr::letrec(std::move(ext), std::move(body));
            },
            [&](const expr::Try& t) -> ExprPtr {
              auto body = expression(t.body, s);
              auto on_value = expression(t.on_value, without_vars(s, t.vars));
              auto on_exc = expression(t.on_exception, without_vars(s, t.catch_vars));
              if (body == t.body && on_value == t.on_value && on_exc == t.on_exception) return e;
              return expr::try_(std::move(body), t.vars, std::move(on_value), t.catch_vars,
                                std::move(on_exc));
            },
        },
        e->node);
  }

 private:
  static ValuePtr lookup(const Name& n, const ValuePtr& self, const Substitution& s) {
    auto it = s.find(n);
    return it == s.end() ? self : it->second;
  }

  static Substitution without(const Substitution& s, const NameSet& names) {
    Substitution out = s;
    for (const auto& n : names) out.erase(n);
    return out;
  }

  static Substitution without_vars(const Substitution& s, const std::vector<std::string>& vars) {
    Substitution out = s;
    for (const auto& v : vars) out.erase(Var{v});
    return out;
  }

  static bool same_ext(const Ext& a, const Ext& b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i].body != b[i].body) return false;
    }
    return true;
  }

  std::vector<ValuePtr> values(const std::vector<ValuePtr>& vs, const Substitution& s) {
    std::vector<ValuePtr> out;
    out.reserve(vs.size());
    for (const auto& v : vs) out.push_back(value(v, s));
    return out;
  }

  std::vector<ExprPtr> exprs(const std::vector<ExprPtr>& es, const Substitution& s) {
    std::vector<ExprPtr> out;
    out.reserve(es.size());
    for (const auto& e : es) out.push_back(expression(e, s));
    return out;
  }

  Ext ext(const Ext& defs, const Substitution& s) {
    Ext out;
    out.reserve(defs.size());
    for (const auto& d : defs) {
      out.push_back(FunDef{d.id, d.params, expression(d.body, without_vars(s, d.params))});
    }
    return out;
  }

  Clause clause(const Clause& cl, const Substitution& s) {
    NameSet bound;
    for (const auto& p : cl.patterns) collect(*p, bound);
    Substitution inner = without(s, bound);
    return Clause{cl.patterns, expression(cl.guard, inner), expression(cl.body, inner)};
  }

  static void collect(const Pattern& p, NameSet& out) {
    std::visit(
        overloaded{
            [&](const pat::Var& x) { out.insert(Var{x.id}); },
            [&](const pat::Cons& c) {
              collect(*c.head, out);
              collect(*c.tail, out);
            },
            [&](const pat::Tuple& t) {
              for (const auto& e : t.elems) collect(*e, out);
            },
            [&](const pat::Map& m) {
              for (const auto& [k, x] : m.pairs) {
                collect(*k, out);
                collect(*x, out);
              }
            },
            [](const auto&) {},
        },
        p.node);
  }
};

void require_closed_range(const Substitution& s) {
  for (const auto& [name, v] : s) {
    if (!v) throw OpenSubstitutionError("substitution maps a name to no value");
    if (!is_closed(*v)) throw OpenSubstitutionError("substitution range value is not closed");
  }
}

}  // namespace

Redex apply(const Redex& r, const Substitution& s) {
  require_closed_range(s);
  Substituter sub;
  return std::visit(
      overloaded{
          [&](const ExprPtr& e) -> Redex { return sub.expression(e, s); },
          [&](const ValueSeq& vs) -> Redex {
            ValueSeq out;
            out.reserve(vs.size());
            for (const auto& v : vs) out.push_back(sub.value(v, s));
            return out;
          },
          [&](const Exception& x) -> Redex {
            return Exception{x.cls, sub.value(x.reason, s), sub.value(x.details, s)};
          },
          [](const Box& b) -> Redex { return b; },
      },
      r);
}

ExprPtr apply(const ExprPtr& e, const Substitution& s) {
  require_closed_range(s);
  return Substituter{}.expression(e, s);
}

ValuePtr apply(const ValuePtr& v, const Substitution& s) {
  require_closed_range(s);
  return Substituter{}.value(v, s);
}

Substitution compose_update(Substitution s,
                            const std::vector<std::pair<Name, ValuePtr>>& more) {
  for (const auto& [n, v] : more) s.insert_or_assign(n, v);
  return s;
}

bool subscoped(const NameSet& gamma, const Substitution& s) {
  for (const auto& n : gamma) {
    if (!s.contains(n)) return false;
  }
  return std::all_of(s.begin(), s.end(),
                     [](const auto& kv) { return kv.second && is_closed(*kv.second); });
}

}  // namespace cerl
