#include <sstream>

#include "cerl/frontend.hpp"

namespace cerl {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

constexpr const char* kHole = "□";

std::string quote(const std::string& name) {
  std::string out = "'";
  for (char c : name) {
    switch (c) {
      case '\'': out += "\\'"; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  return out + "'";
}

template <class T, class F>
std::string join(const std::vector<T>& xs, F&& f, const char* sep = ",") {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += sep;
    out += f(xs[i]);
  }
  return out;
}

std::string vars(const std::vector<std::string>& xs) {
  return "<" + join(xs, [](const std::string& x) { return x; }) + ">";
}

class Printer {
 public:
  std::string value(const ValuePtr& v) {
    return std::visit(
        overloaded{
            [](const val::Int& i) { return i.value.str(); },
            [](const val::Atom& a) { return quote(a.name); },
            [](const Var& x) { return x.id; },
            [](const FunId& f) { return quote(f.atom) + "/" + std::to_string(f.arity); },
            [&](const val::Closure& c) {
              return "clos([" + join(c.ext, [&](const FunDef& d) { return fundef(d); }) + "],[" +
                     join(c.params, [](const std::string& x) { return x; }) + "]," + expr(c.body) + ")";
            },
            [](const val::Nil&) { return std::string("[]"); },
            [&](const val::Cons& c) {
              std::string out = "[" + value(c.head);
              ValuePtr tail = c.tail;
              while (const auto* next = std::get_if<val::Cons>(&tail->node)) {
                out += "," + value(next->head);
                tail = next->tail;
              }
              if (!std::holds_alternative<val::Nil>(tail->node)) out += "|" + value(tail);
              return out + "]";
            },
            [&](const val::Tuple& t) {
              return "{" + join(t.elems, [&](const ValuePtr& x) { return value(x); }) + "}";
            },
            [&](const val::Map& m) {
              return "~{" +
                     join(m.pairs,
                          [&](const std::pair<ValuePtr, ValuePtr>& kv) {
                            return value(kv.first) + "=>" + value(kv.second);
                          }) +
                     "}~";
            },
        },
        v->node);
  }

  std::string pattern(const PatternPtr& p) {
    return std::visit(
        overloaded{
            [](const pat::Int& i) { return i.value.str(); },
            [](const pat::Atom& a) { return quote(a.name); },
            [](const pat::Var& x) { return x.id; },
            [](const pat::Nil&) { return std::string("[]"); },
            [&](const pat::Cons& c) {
              std::string out = "[" + pattern(c.head);
              PatternPtr tail = c.tail;
              while (const auto* next = std::get_if<pat::Cons>(&tail->node)) {
                out += "," + pattern(next->head);
                tail = next->tail;
              }
              if (!std::holds_alternative<pat::Nil>(tail->node)) out += "|" + pattern(tail);
              return out + "]";
            },
            [&](const pat::Tuple& t) {
              return "{" + join(t.elems, [&](const PatternPtr& x) { return pattern(x); }) + "}";
            },
            [&](const pat::Map& m) {
              return "~{" +
                     join(m.pairs,
                          [&](const std::pair<PatternPtr, PatternPtr>& kv) {
                            return pattern(kv.first) + "=>" + pattern(kv.second);
                          }) +
                     "}~";
            },
        },
        p->node);
  }

  std::string patterns(const std::vector<PatternPtr>& ps) {
    return "<" + join(ps, [&](const PatternPtr& p) { return pattern(p); }) + ">";
  }

  std::string clause(const Clause& c) {
    return patterns(c.patterns) + " when " + expr(c.guard) + " -> " + expr(c.body);
  }

  std::string clauses(const std::vector<Clause>& cs) {
    std::string out;
    for (const auto& c : cs) out += " " + clause(c);
    return out;
  }

  std::string fundef(const FunDef& d) {
    return quote(d.id.atom) + "/" + std::to_string(d.id.arity) + " = fun (" +
           join(d.params, [](const std::string& x) { return x; }) + ") -> " + expr(d.body);
  }

  std::string exprs(const std::vector<ExprPtr>& es) {
    return join(es, [&](const ExprPtr& e) { return expr(e); });
  }

  // Operand positions of call/apply read better with non-trivial
  // expressions parenthesised; the grammar does not need it.
  std::string operand(const ExprPtr& e) {
    if (e->as_value()) return expr(e);
    return "(" + expr(e) + ")";
  }

  std::string expr(const ExprPtr& e) {
    return std::visit(
        overloaded{
            [&](const ValuePtr& v) { return value(v); },
            [&](const expr::Fun& f) {
              return "fun (" + join(f.params, [](const std::string& x) { return x; }) + ") -> " + expr(f.body);
            },
            [&](const expr::Values& v) { return "<" + exprs(v.elems) + ">"; },
            [&](const expr::Cons& c) {
              std::string out = "[" + expr(c.head);
              ExprPtr tail = c.tail;
              while (const auto* next = std::get_if<expr::Cons>(&tail->node)) {
                out += "," + expr(next->head);
                tail = next->tail;
              }
              const ValuePtr* tv = tail->as_value();
              if (!(tv && std::holds_alternative<val::Nil>((*tv)->node))) out += "|" + expr(tail);
              return out + "]";
            },
            [&](const expr::Tuple& t) { return "{" + exprs(t.elems) + "}"; },
            [&](const expr::Map& m) {
              return "~{" +
                     join(m.pairs,
                          [&](const std::pair<ExprPtr, ExprPtr>& kv) {
                            return expr(kv.first) + "=>" + expr(kv.second);
                          }) +
                     "}~";
            },
            [&](const expr::Call& c) {
              return "call " + operand(c.module) + ":" + operand(c.function) + "(" + exprs(c.args) + ")";
            },
            [&](const expr::PrimOp& p) { return "primop " + quote(p.name) + "(" + exprs(p.args) + ")"; },
            [&](const expr::Apply& a) { return "apply " + operand(a.function) + "(" + exprs(a.args) + ")"; },
            [&](const expr::Case& c) { return "case " + expr(c.scrutinee) + " of" + clauses(c.clauses) + " end"; },
            [&](const expr::Let& l) { return "let " + vars(l.vars) + " = " + expr(l.bound) + " in " + expr(l.body); },
            [&](const expr::Seq& s) { return "do " + expr(s.first) + " " + expr(s.second); },
            [&](const expr::LetRec& l) {
              std::string out = "letrec";
              for (const auto& d : l.ext) out += " " + fundef(d);
              return out + " in " + expr(l.body);
            },
            [&](const expr::Try& t) {
              return "try " + expr(t.body) + " of " + vars(t.vars) + " -> " + expr(t.on_value) + " catch " +
                     vars(t.catch_vars) + " -> " + expr(t.on_exception);
            },
        },
        e->node);
  }

  std::string seq(const ValueSeq& vs) {
    return "<" + join(vs, [&](const ValuePtr& v) { return value(v); }) + ">";
  }

  std::string exception(const Exception& x) {
    return "{" + quote(std::string(exc_class_name(x.cls))) + "," + value(x.reason) + "," + value(x.details) + "}^X";
  }

  std::string frame(const Frame& f) {
    if (const auto* g = std::get_if<frame::CaseGuard>(&f)) {
      return "case " + seq(g->scrutinee) + " of " + patterns(g->patterns) + " when " + kHole + " -> " +
             expr(g->body) + clauses(g->rest) + " end";
    }
    return expr(plug(f, expr::var(kHole)));
  }
};

}  // namespace

std::string print(const ExprPtr& e) { return Printer().expr(e); }
std::string print(const ValuePtr& v) { return Printer().value(v); }
std::string print(const PatternPtr& p) { return Printer().pattern(p); }
std::string print(const ValueSeq& vs) { return Printer().seq(vs); }
std::string print(const Exception& exc) { return Printer().exception(exc); }

std::string print(const Result& r) {
  return std::visit(overloaded{[](const ValueSeq& vs) { return print(vs); },
                               [](const Exception& x) { return print(x); }},
                    r);
}

std::string print(const Redex& r) {
  return std::visit(overloaded{[](const ExprPtr& e) { return print(e); },
                               [](const ValueSeq& vs) { return print(vs); },
                               [](const Exception& x) { return print(x); },
                               [](const Box&) { return std::string(kHole); }},
                    r);
}

std::string print(const Frame& f) { return Printer().frame(f); }

std::string print(const FrameStack& k) {
  std::string out;
  for (const auto& f : k.top_first()) out += print(f) + " :: ";
  return out + "ε";
}

std::string print(const Configuration& c) {
  return "⟨" + print(c.stack) + ", " + print(c.redex) + "⟩";
}

std::string print(const Name& n) {
  return std::visit(overloaded{[](const Var& x) { return x.id; },
                               [](const FunId& f) { return quote(f.atom) + "/" + std::to_string(f.arity); }},
                    n);
}

std::string print(const Substitution& s) {
  std::string out = "{";
  bool first = true;
  for (const auto& [n, v] : s) {
    if (!first) out += ", ";
    first = false;
    out += print(n) + " ↦ " + print(v);
  }
  return out + "}";
}

}  // namespace cerl
