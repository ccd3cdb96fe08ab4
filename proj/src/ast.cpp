#include "cerl/ast.hpp"

#include <algorithm>
#include <stdexcept>

namespace cerl {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::strong_ordering order(const Integer& a, const Integer& b) {
  if (a < b) return std::strong_ordering::less;
  if (a == b) return std::strong_ordering::equal;
  return std::strong_ordering::greater;
}

template <class T, class Cmp>
std::strong_ordering lex(const std::vector<T>& a, const std::vector<T>& b,
                         Cmp cmp) {
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (auto c = cmp(a[i], b[i]); c != 0) return c;
  }
  return a.size() <=> b.size();
}

template <class P>
std::strong_ordering cmp_ptrs(const std::vector<P>& a,
                              const std::vector<P>& b) {
  return lex(a, b, [](const P& x, const P& y) { return compare(x, y); });
}

template <class P>
std::strong_ordering cmp_pairs(const std::vector<std::pair<P, P>>& a,
                               const std::vector<std::pair<P, P>>& b) {
  return lex(a, b, [](const std::pair<P, P>& x, const std::pair<P, P>& y) {
    if (auto c = compare(x.first, y.first); c != 0) return c;
    return compare(x.second, y.second);
  });
}

std::strong_ordering cmp_ext(const Ext& a, const Ext& b) {
  return lex(a, b, [](const FunDef& x, const FunDef& y) { return compare(x, y); });
}

std::strong_ordering cmp_clauses(const std::vector<Clause>& a,
                                 const std::vector<Clause>& b) {
  return lex(a, b, [](const Clause& x, const Clause& y) { return compare(x, y); });
}

// Node comparison for two alternatives known to have the same index.
std::strong_ordering same_kind(const val::Int& a, const val::Int& b) { return order(a.value, b.value); }
std::strong_ordering same_kind(const val::Atom& a, const val::Atom& b) { return a.name <=> b.name; }
std::strong_ordering same_kind(const Var& a, const Var& b) { return a <=> b; }
std::strong_ordering same_kind(const FunId& a, const FunId& b) { return a <=> b; }
std::strong_ordering same_kind(const val::Closure& a, const val::Closure& b) {
  if (auto c = a.params.size() <=> b.params.size(); c != 0) return c;
  if (auto c = a.params <=> b.params; c != 0) return c;
  if (auto c = compare(a.body, b.body); c != 0) return c;
  return cmp_ext(a.ext, b.ext);
}
std::strong_ordering same_kind(const val::Nil&, const val::Nil&) { return std::strong_ordering::equal; }
std::strong_ordering same_kind(const val::Cons& a, const val::Cons& b) {
  if (auto c = compare(a.head, b.head); c != 0) return c;
  return compare(a.tail, b.tail);
}
std::strong_ordering same_kind(const val::Tuple& a, const val::Tuple& b) { return cmp_ptrs(a.elems, b.elems); }
std::strong_ordering same_kind(const val::Map& a, const val::Map& b) { return cmp_pairs(a.pairs, b.pairs); }

std::strong_ordering same_kind(const pat::Int& a, const pat::Int& b) { return order(a.value, b.value); }
std::strong_ordering same_kind(const pat::Atom& a, const pat::Atom& b) { return a.name <=> b.name; }
std::strong_ordering same_kind(const pat::Var& a, const pat::Var& b) { return a.id <=> b.id; }
std::strong_ordering same_kind(const pat::Nil&, const pat::Nil&) { return std::strong_ordering::equal; }
std::strong_ordering same_kind(const pat::Cons& a, const pat::Cons& b) {
  if (auto c = compare(a.head, b.head); c != 0) return c;
  return compare(a.tail, b.tail);
}
std::strong_ordering same_kind(const pat::Tuple& a, const pat::Tuple& b) { return cmp_ptrs(a.elems, b.elems); }
std::strong_ordering same_kind(const pat::Map& a, const pat::Map& b) { return cmp_pairs(a.pairs, b.pairs); }

std::strong_ordering same_kind(const ValuePtr& a, const ValuePtr& b) { return compare(a, b); }
std::strong_ordering same_kind(const expr::Fun& a, const expr::Fun& b) {
  if (auto c = a.params <=> b.params; c != 0) return c;
  return compare(a.body, b.body);
}
std::strong_ordering same_kind(const expr::Values& a, const expr::Values& b) { return cmp_ptrs(a.elems, b.elems); }
std::strong_ordering same_kind(const expr::Cons& a, const expr::Cons& b) {
  if (auto c = compare(a.head, b.head); c != 0) return c;
  return compare(a.tail, b.tail);
}
std::strong_ordering same_kind(const expr::Tuple& a, const expr::Tuple& b) { return cmp_ptrs(a.elems, b.elems); }
std::strong_ordering same_kind(const expr::Map& a, const expr::Map& b) { return cmp_pairs(a.pairs, b.pairs); }
std::strong_ordering same_kind(const expr::Call& a, const expr::Call& b) {
  if (auto c = compare(a.module, b.module); c != 0) return c;
  if (auto c = compare(a.function, b.function); c != 0) return c;
  return cmp_ptrs(a.args, b.args);
}
std::strong_ordering same_kind(const expr::PrimOp& a, const expr::PrimOp& b) {
  if (auto c = a.name <=> b.name; c != 0) return c;
  return cmp_ptrs(a.args, b.args);
}
std::strong_ordering same_kind(const expr::Apply& a, const expr::Apply& b) {
  if (auto c = compare(a.function, b.function); c != 0) return c;
  return cmp_ptrs(a.args, b.args);
}
std::strong_ordering same_kind(const expr::Case& a, const expr::Case& b) {
  if (auto c = compare(a.scrutinee, b.scrutinee); c != 0) return c;
  return cmp_clauses(a.clauses, b.clauses);
}
std::strong_ordering same_kind(const expr::Let& a, const expr::Let& b) {
  if (auto c = a.vars <=> b.vars; c != 0) return c;
  if (auto c = compare(a.bound, b.bound); c != 0) return c;
  return compare(a.body, b.body);
}
std::strong_ordering same_kind(const expr::Seq& a, const expr::Seq& b) {
  if (auto c = compare(a.first, b.first); c != 0) return c;
  return compare(a.second, b.second);
}
std::strong_ordering same_kind(const expr::LetRec& a, const expr::LetRec& b) {
  if (auto c = cmp_ext(a.ext, b.ext); c != 0) return c;
  return compare(a.body, b.body);
}
std::strong_ordering same_kind(const expr::Try& a, const expr::Try& b) {
  if (auto c = compare(a.body, b.body); c != 0) return c;
  if (auto c = a.vars <=> b.vars; c != 0) return c;
  if (auto c = compare(a.on_value, b.on_value); c != 0) return c;
  if (auto c = a.catch_vars <=> b.catch_vars; c != 0) return c;
  return compare(a.on_exception, b.on_exception);
}

template <class Variant>
std::strong_ordering compare_variants(const Variant& a, const Variant& b) {
  if (auto c = a.index() <=> b.index(); c != 0) return c;
  return std::visit(
      [&b](const auto& x) -> std::strong_ordering {
        using T = std::decay_t<decltype(x)>;
        return same_kind(x, std::get<T>(b));
      },
      a);
}

}  // namespace

// ---------------------------------------------------------------------------
// Builders

namespace pat {
PatternPtr integer(Integer i) { return std::make_shared<const Pattern>(Int{std::move(i)}); }
PatternPtr atom(std::string name) { return std::make_shared<const Pattern>(Atom{std::move(name)}); }
PatternPtr var(std::string id) { return std::make_shared<const Pattern>(Var{std::move(id)}); }
PatternPtr nil() { return std::make_shared<const Pattern>(Nil{}); }
PatternPtr cons(PatternPtr head, PatternPtr tail) {
  return std::make_shared<const Pattern>(Cons{std::move(head), std::move(tail)});
}
PatternPtr tuple(std::vector<PatternPtr> elems) {
  return std::make_shared<const Pattern>(Tuple{std::move(elems)});
}
PatternPtr map(std::vector<std::pair<PatternPtr, PatternPtr>> pairs) {
  return std::make_shared<const Pattern>(Map{std::move(pairs)});
}
PatternPtr list(std::vector<PatternPtr> elems, PatternPtr tail) {
  for (auto it = elems.rbegin(); it != elems.rend(); ++it) tail = cons(*it, tail);
  return tail;
}
}  // namespace pat

namespace val {
ValuePtr integer(Integer i) { return std::make_shared<const Value>(Int{std::move(i)}); }
ValuePtr atom(std::string name) { return std::make_shared<const Value>(Atom{std::move(name)}); }
ValuePtr var(std::string id) { return std::make_shared<const Value>(Var{std::move(id)}); }
ValuePtr funid(std::string atom, std::size_t arity) {
  return std::make_shared<const Value>(FunId{std::move(atom), arity});
}
ValuePtr closure(Ext ext, std::vector<std::string> params, ExprPtr body) {
  return std::make_shared<const Value>(Closure{std::move(ext), std::move(params), std::move(body)});
}
ValuePtr nil() {
  static const ValuePtr kNil = std::make_shared<const Value>(Nil{});
  return kNil;
}
ValuePtr cons(ValuePtr head, ValuePtr tail) {
  return std::make_shared<const Value>(Cons{std::move(head), std::move(tail)});
}
ValuePtr tuple(std::vector<ValuePtr> elems) {
  return std::make_shared<const Value>(Tuple{std::move(elems)});
}
ValuePtr list(std::vector<ValuePtr> elems, ValuePtr tail) {
  for (auto it = elems.rbegin(); it != elems.rend(); ++it) tail = cons(*it, tail);
  return tail;
}
ValuePtr map(std::vector<std::pair<ValuePtr, ValuePtr>> pairs) {
  // Stable sort keeps insertion order among equal keys; the last one wins.
  std::stable_sort(pairs.begin(), pairs.end(), [](const auto& x, const auto& y) {
    return compare(x.first, y.first) < 0;
  });
  std::vector<std::pair<ValuePtr, ValuePtr>> out;
  out.reserve(pairs.size());
  for (auto& p : pairs) {
    if (!out.empty() && compare(out.back().first, p.first) == 0) {
      out.back().second = std::move(p.second);
    } else {
      out.push_back(std::move(p));
    }
  }
  return std::make_shared<const Value>(Map{std::move(out)});
}
ValuePtr true_atom() {
  static const ValuePtr kTrue = atom("true");
  return kTrue;
}
ValuePtr false_atom() {
  static const ValuePtr kFalse = atom("false");
  return kFalse;
}
}  // namespace val

namespace expr {
namespace {
ExprPtr make(Expr::Node n) { return std::make_shared<const Expr>(std::move(n)); }
}  // namespace

ExprPtr val(ValuePtr v) { return make(std::move(v)); }
ExprPtr var(std::string id) { return val(val::var(std::move(id))); }
ExprPtr atom(std::string name) { return val(val::atom(std::move(name))); }
ExprPtr integer(Integer i) { return val(val::integer(std::move(i))); }
ExprPtr fun(std::vector<std::string> params, ExprPtr body) {
  return make(Fun{std::move(params), std::move(body)});
}
ExprPtr values(std::vector<ExprPtr> elems) { return make(Values{std::move(elems)}); }
ExprPtr cons(ExprPtr head, ExprPtr tail) { return make(Cons{std::move(head), std::move(tail)}); }
ExprPtr tuple(std::vector<ExprPtr> elems) { return make(Tuple{std::move(elems)}); }
ExprPtr map(std::vector<std::pair<ExprPtr, ExprPtr>> pairs) { return make(Map{std::move(pairs)}); }
ExprPtr call(ExprPtr module, ExprPtr function, std::vector<ExprPtr> args) {
  return make(Call{std::move(module), std::move(function), std::move(args)});
}
ExprPtr call(std::string module, std::string function, std::vector<ExprPtr> args) {
  return call(atom(std::move(module)), atom(std::move(function)), std::move(args));
}
ExprPtr primop(std::string name, std::vector<ExprPtr> args) {
  return make(PrimOp{std::move(name), std::move(args)});
}
ExprPtr apply(ExprPtr function, std::vector<ExprPtr> args) {
  return make(Apply{std::move(function), std::move(args)});
}
ExprPtr case_(ExprPtr scrutinee, std::vector<Clause> clauses) {
  return make(Case{std::move(scrutinee), std::move(clauses)});
}
ExprPtr let(std::vector<std::string> vars, ExprPtr bound, ExprPtr body) {
  return make(Let{std::move(vars), std::move(bound), std::move(body)});
}
ExprPtr seq(ExprPtr first, ExprPtr second) { return make(Seq{std::move(first), std::move(second)}); }
ExprPtr letrec(Ext ext, ExprPtr body) { return make(LetRec{std::move(ext), std::move(body)}); }
ExprPtr try_(ExprPtr body, std::vector<std::string> vars, ExprPtr on_value,
             std::vector<std::string> catch_vars, ExprPtr on_exception) {
  return make(Try{std::move(body), std::move(vars), std::move(on_value),
                  std::move(catch_vars), std::move(on_exception)});
}
}  // namespace expr

std::string_view exc_class_name(ExcClass c) {
  switch (c) {
    case ExcClass::Throw: return "throw";
    case ExcClass::Exit: return "exit";
    case ExcClass::Error: return "error";
  }
  return "error";
}

std::optional<ExcClass> exc_class_from_atom(std::string_view atom) {
  if (atom == "throw") return ExcClass::Throw;
  if (atom == "exit") return ExcClass::Exit;
  if (atom == "error") return ExcClass::Error;
  return std::nullopt;
}

Redex to_redex(const Result& r) {
  return std::visit([](const auto& x) -> Redex { return x; }, r);
}

// ---------------------------------------------------------------------------
// Comparison

std::strong_ordering compare(const Value& a, const Value& b) { return compare_variants(a.node, b.node); }
std::strong_ordering compare(const ValuePtr& a, const ValuePtr& b) {
  if (a == b) return std::strong_ordering::equal;
  return compare(*a, *b);
}
std::strong_ordering compare(const Expr& a, const Expr& b) { return compare_variants(a.node, b.node); }
std::strong_ordering compare(const ExprPtr& a, const ExprPtr& b) {
  if (a == b) return std::strong_ordering::equal;
  return compare(*a, *b);
}
std::strong_ordering compare(const Pattern& a, const Pattern& b) { return compare_variants(a.node, b.node); }
std::strong_ordering compare(const PatternPtr& a, const PatternPtr& b) {
  if (a == b) return std::strong_ordering::equal;
  return compare(*a, *b);
}
std::strong_ordering compare(const FunDef& a, const FunDef& b) {
  if (auto c = a.id <=> b.id; c != 0) return c;
  if (auto c = a.params <=> b.params; c != 0) return c;
  return compare(a.body, b.body);
}
std::strong_ordering compare(const Clause& a, const Clause& b) {
  if (auto c = cmp_ptrs(a.patterns, b.patterns); c != 0) return c;
  if (auto c = compare(a.guard, b.guard); c != 0) return c;
  return compare(a.body, b.body);
}
std::strong_ordering compare(const Exception& a, const Exception& b) {
  if (auto c = a.cls <=> b.cls; c != 0) return c;
  if (auto c = compare(a.reason, b.reason); c != 0) return c;
  return compare(a.details, b.details);
}
std::strong_ordering compare(const ValueSeq& a, const ValueSeq& b) { return cmp_ptrs(a, b); }

bool equal(const ValuePtr& a, const ValuePtr& b) { return compare(a, b) == 0; }
bool equal(const ExprPtr& a, const ExprPtr& b) { return compare(a, b) == 0; }
bool equal(const PatternPtr& a, const PatternPtr& b) { return compare(a, b) == 0; }

bool equal(const Result& a, const Result& b) {
  if (a.index() != b.index()) return false;
  if (const auto* vs = std::get_if<ValueSeq>(&a)) return compare(*vs, std::get<ValueSeq>(b)) == 0;
  return compare(std::get<Exception>(a), std::get<Exception>(b)) == 0;
}

bool equal(const Redex& a, const Redex& b) {
  if (a.index() != b.index()) return false;
  return std::visit(
      overloaded{
          [&](const ExprPtr& e) { return equal(e, std::get<ExprPtr>(b)); },
          [&](const ValueSeq& vs) { return compare(vs, std::get<ValueSeq>(b)) == 0; },
          [&](const Exception& x) { return compare(x, std::get<Exception>(b)) == 0; },
          [](const Box&) { return true; },
      },
      a);
}

bool contains_closure(const Value& v) {
  return std::visit(
      overloaded{
          [](const val::Closure&) { return true; },
          [](const val::Cons& c) { return contains_closure(*c.head) || contains_closure(*c.tail); },
          [](const val::Tuple& t) {
            return std::any_of(t.elems.begin(), t.elems.end(),
                               [](const ValuePtr& e) { return contains_closure(*e); });
          },
          [](const val::Map& m) {
            return std::any_of(m.pairs.begin(), m.pairs.end(), [](const auto& p) {
              return contains_closure(*p.first) || contains_closure(*p.second);
            });
          },
          [](const auto&) { return false; },
      },
      v.node);
}

// ---------------------------------------------------------------------------
// Free names

namespace {

class FreeNames {
 public:
  NameSet result;

  void value(const Value& v, const NameSet& bound) {
    std::visit(
        overloaded{
            [&](const Var& x) { note(Name{x}, bound); },
            [&](const FunId& f) { note(Name{f}, bound); },
            [&](const val::Closure& c) {
              NameSet inner = bound;
              for (const auto& n : names_of(c.ext)) inner.insert(n);
              ext(c.ext, inner);
              for (const auto& p : c.params) inner.insert(Var{p});
              expression(*c.body, inner);
            },
            [&](const val::Cons& c) {
              value(*c.head, bound);
              value(*c.tail, bound);
            },
            [&](const val::Tuple& t) {
              for (const auto& e : t.elems) value(*e, bound);
            },
            [&](const val::Map& m) {
              for (const auto& [k, x] : m.pairs) {
                value(*k, bound);
                value(*x, bound);
              }
            },
            [](const auto&) {},
        },
        v.node);
  }

  void expression(const Expr& e, const NameSet& bound) {
    std::visit(
        overloaded{
            [&](const ValuePtr& v) { value(*v, bound); },
            [&](const expr::Fun& f) { expression(*f.body, with_vars(bound, f.params)); },
            [&](const expr::Values& v) { all(v.elems, bound); },
            [&](const expr::Cons& c) {
              expression(*c.head, bound);
              expression(*c.tail, bound);
            },
            [&](const expr::Tuple& t) { all(t.elems, bound); },
            [&](const expr::Map& m) {
              for (const auto& [k, x] : m.pairs) {
                expression(*k, bound);
                expression(*x, bound);
              }
            },
            [&](const expr::Call& c) {
              expression(*c.module, bound);
              expression(*c.function, bound);
              all(c.args, bound);
            },
            [&](const expr::PrimOp& p) { all(p.args, bound); },
            [&](const expr::Apply& a) {
              expression(*a.function, bound);
              all(a.args, bound);
            },
            [&](const expr::Case& c) {
              expression(*c.scrutinee, bound);
              for (const auto& cl : c.clauses) clause(cl, bound);
            },
            [&](const expr::Let& l) {
              expression(*l.bound, bound);
              expression(*l.body, with_vars(bound, l.vars));
            },
            [&](const expr::Seq& s) {
              expression(*s.first, bound);
              expression(*s.second, bound);
            },
            [&](const expr::LetRec& l) {
              NameSet inner = bound;
              for (const auto& n : names_of(l.ext)) inner.insert(n);
              ext(l.ext, inner);
              expression(*l.body, inner);
            },
            [&](const expr::Try& t) {
              expression(*t.body, bound);
              expression(*t.on_value, with_vars(bound, t.vars));
              expression(*t.on_exception, with_vars(bound, t.catch_vars));
            },
        },
        e.node);
  }

 private:
  void note(const Name& n, const NameSet& bound) {
    if (!bound.contains(n)) result.insert(n);
  }

  void all(const std::vector<ExprPtr>& es, const NameSet& bound) {
    for (const auto& e : es) expression(*e, bound);
  }

  void ext(const Ext& defs, const NameSet& bound) {
    for (const auto& d : defs) expression(*d.body, with_vars(bound, d.params));
  }

  void clause(const Clause& cl, const NameSet& bound) {
    NameSet inner = bound;
    for (const auto& p : cl.patterns) pattern_vars(*p, inner);
    expression(*cl.guard, inner);
    expression(*cl.body, inner);
  }

  static void pattern_vars(const Pattern& p, NameSet& out) {
    std::visit(
        overloaded{
            [&](const pat::Var& x) { out.insert(Var{x.id}); },
            [&](const pat::Cons& c) {
              pattern_vars(*c.head, out);
              pattern_vars(*c.tail, out);
            },
            [&](const pat::Tuple& t) {
              for (const auto& e : t.elems) pattern_vars(*e, out);
            },
            [&](const pat::Map& m) {
              for (const auto& [k, x] : m.pairs) {
                pattern_vars(*k, out);
                pattern_vars(*x, out);
              }
            },
            [](const auto&) {},
        },
        p.node);
  }

  static NameSet with_vars(const NameSet& bound, const std::vector<std::string>& vars) {
    NameSet out = bound;
    for (const auto& v : vars) out.insert(Var{v});
    return out;
  }
};

// ---------------------------------------------------------------------------
// Well-formedness

bool wf_value(const Value& v);
bool wf_expr(const Expr& e);

bool wf_ext(const Ext& ext) {
  return std::all_of(ext.begin(), ext.end(), [](const FunDef& d) {
    return d.id.arity == d.params.size() && wf_expr(*d.body);
  });
}

bool wf_all(const std::vector<ExprPtr>& es) {
  return std::all_of(es.begin(), es.end(), [](const ExprPtr& e) { return wf_expr(*e); });
}

bool wf_value(const Value& v) {
  return std::visit(
      overloaded{
          [](const val::Closure& c) { return wf_ext(c.ext) && wf_expr(*c.body); },
          [](const val::Cons& c) { return wf_value(*c.head) && wf_value(*c.tail); },
          [](const val::Tuple& t) {
            return std::all_of(t.elems.begin(), t.elems.end(),
                               [](const ValuePtr& e) { return wf_value(*e); });
          },
          [](const val::Map& m) {
            return std::all_of(m.pairs.begin(), m.pairs.end(), [](const auto& p) {
              return wf_value(*p.first) && wf_value(*p.second);
            });
          },
          [](const auto&) { return true; },
      },
      v.node);
}

bool wf_expr(const Expr& e) {
  return std::visit(
      overloaded{
          [](const ValuePtr& v) { return wf_value(*v); },
          [](const expr::Fun& f) { return wf_expr(*f.body); },
          [](const expr::Values& v) { return wf_all(v.elems); },
          [](const expr::Cons& c) { return wf_expr(*c.head) && wf_expr(*c.tail); },
          [](const expr::Tuple& t) { return wf_all(t.elems); },
          [](const expr::Map& m) {
            return std::all_of(m.pairs.begin(), m.pairs.end(), [](const auto& p) {
              return wf_expr(*p.first) && wf_expr(*p.second);
            });
          },
          [](const expr::Call& c) {
            return wf_expr(*c.module) && wf_expr(*c.function) && wf_all(c.args);
          },
          [](const expr::PrimOp& p) { return wf_all(p.args); },
          [](const expr::Apply& a) { return wf_expr(*a.function) && wf_all(a.args); },
          [](const expr::Case& c) {
            if (!wf_expr(*c.scrutinee)) return false;
            if (c.clauses.empty()) return true;
            const std::size_t arity = c.clauses.front().patterns.size();
            return std::all_of(c.clauses.begin(), c.clauses.end(), [arity](const Clause& cl) {
              return cl.patterns.size() == arity && wf_expr(*cl.guard) && wf_expr(*cl.body);
            });
          },
          [](const expr::Let& l) { return wf_expr(*l.bound) && wf_expr(*l.body); },
          [](const expr::Seq& s) { return wf_expr(*s.first) && wf_expr(*s.second); },
          [](const expr::LetRec& l) { return wf_ext(l.ext) && wf_expr(*l.body); },
          [](const expr::Try& t) {
            return t.catch_vars.size() == 3 && wf_expr(*t.body) && wf_expr(*t.on_value) &&
                   wf_expr(*t.on_exception);
          },
      },
      e.node);
}

}  // namespace

NameSet free_names(const Value& v) {
  FreeNames f;
  f.value(v, {});
  return std::move(f.result);
}

NameSet free_names(const Expr& e) {
  FreeNames f;
  f.expression(e, {});
  return std::move(f.result);
}

NameSet free_names(const Exception& exc) {
  NameSet out = free_names(*exc.reason);
  out.merge(free_names(*exc.details));
  return out;
}

NameSet free_names(const Redex& r) {
  return std::visit(
      overloaded{
          [](const ExprPtr& e) { return free_names(*e); },
          [](const ValueSeq& vs) {
            NameSet out;
            for (const auto& v : vs) out.merge(free_names(*v));
            return out;
          },
          [](const Exception& x) { return free_names(x); },
          [](const Box&) { return NameSet{}; },
      },
      r);
}

NameSet names_of(const Ext& ext) {
  NameSet out;
  for (const auto& d : ext) out.insert(d.id);
  return out;
}

bool is_closed(const Value& v) { return free_names(v).empty(); }
bool is_closed(const Expr& e) { return free_names(e).empty(); }
bool is_closed(const Redex& r) { return free_names(r).empty(); }

bool well_formed(const Value& v) { return wf_value(v); }
bool well_formed(const Expr& e) { return wf_expr(e); }
bool well_formed(const Redex& r) {
  return std::visit(
      overloaded{
          [](const ExprPtr& e) { return wf_expr(*e); },
          [](const ValueSeq& vs) {
            return std::all_of(vs.begin(), vs.end(), [](const ValuePtr& v) { return wf_value(*v); });
          },
          [](const Exception& x) { return wf_value(*x.reason) && wf_value(*x.details); },
          [](const Box&) { return true; },
      },
      r);
}

bool check_scope(const NameSet& gamma, const Redex& r) {
  if (!well_formed(r)) return false;
  const NameSet fv = free_names(r);
  return std::includes(gamma.begin(), gamma.end(), fv.begin(), fv.end());
}

bool check_scope(const NameSet& gamma, const ExprPtr& e) { return check_scope(gamma, Redex{e}); }
bool check_scope(const NameSet& gamma, const ValuePtr& v) { return check_scope(gamma, Redex{expr::val(v)}); }

}  // namespace cerl
