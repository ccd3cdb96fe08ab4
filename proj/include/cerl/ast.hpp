#pragma once

// Term language of sequential Core Erlang: names, patterns, values,
// expressions, exceptions, results and redexes.
//
// All nodes are immutable and shared through shared_ptr<const T>; a
// term is never mutated after construction, so subtrees can be shared
// freely between configurations and threads.

#include <compare>
#include <cstddef>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace cerl {

using Integer = boost::multiprecision::cpp_int;

struct Var {
  std::string id;
  auto operator<=>(const Var&) const = default;
};

struct FunId {
  std::string atom;
  std::size_t arity = 0;
  auto operator<=>(const FunId&) const = default;
};

/// A variable or a function identifier f/k.
using Name = std::variant<Var, FunId>;
using NameSet = std::set<Name>;

class Value;
class Expr;
class Pattern;
using ValuePtr = std::shared_ptr<const Value>;
using ExprPtr = std::shared_ptr<const Expr>;
using PatternPtr = std::shared_ptr<const Pattern>;

/// f/k = fun(x1, ..., xk) -> body
struct FunDef {
  FunId id;
  std::vector<std::string> params;
  ExprPtr body;
};
using Ext = std::vector<FunDef>;

struct Clause {
  std::vector<PatternPtr> patterns;
  ExprPtr guard;
  ExprPtr body;
};

// ---------------------------------------------------------------------------
// Patterns

namespace pat {
struct Int { Integer value; };
struct Atom { std::string name; };
struct Var { std::string id; };
struct Nil {};
struct Cons { PatternPtr head, tail; };
struct Tuple { std::vector<PatternPtr> elems; };
/// Pairs are kept in source order; no key deduplication.
struct Map { std::vector<std::pair<PatternPtr, PatternPtr>> pairs; };

PatternPtr integer(Integer i);
PatternPtr atom(std::string name);
PatternPtr var(std::string id);
PatternPtr nil();
PatternPtr cons(PatternPtr head, PatternPtr tail);
PatternPtr tuple(std::vector<PatternPtr> elems);
PatternPtr map(std::vector<std::pair<PatternPtr, PatternPtr>> pairs);
PatternPtr list(std::vector<PatternPtr> elems, PatternPtr tail = nil());
}  // namespace pat

class Pattern {
 public:
  using Node = std::variant<pat::Int, pat::Atom, pat::Var, pat::Nil, pat::Cons,
                            pat::Tuple, pat::Map>;
  explicit Pattern(Node n) : node(std::move(n)) {}
  Node node;
};

// ---------------------------------------------------------------------------
// Values
//
// The alternative order of Value::Node is the term order used for map
// keys and the comparison BIFs: Int < Atom < Var < FunId < Closure < Nil <
// Cons < Tuple < Map.

namespace val {
struct Int { Integer value; };
struct Atom { std::string name; };
struct Closure {
  Ext ext;
  std::vector<std::string> params;
  ExprPtr body;
};
struct Nil {};
struct Cons { ValuePtr head, tail; };
struct Tuple { std::vector<ValuePtr> elems; };
/// Canonical: keys strictly increasing in the term order.
struct Map { std::vector<std::pair<ValuePtr, ValuePtr>> pairs; };

ValuePtr integer(Integer i);
ValuePtr atom(std::string name);
ValuePtr var(std::string id);
ValuePtr funid(std::string atom, std::size_t arity);
ValuePtr closure(Ext ext, std::vector<std::string> params, ExprPtr body);
ValuePtr nil();
ValuePtr cons(ValuePtr head, ValuePtr tail);
ValuePtr tuple(std::vector<ValuePtr> elems);
ValuePtr list(std::vector<ValuePtr> elems, ValuePtr tail = nil());
/// Builds a canonical map: sorts keys, later duplicates override earlier.
ValuePtr map(std::vector<std::pair<ValuePtr, ValuePtr>> pairs);

ValuePtr true_atom();
ValuePtr false_atom();
}  // namespace val

class Value {
 public:
  using Node = std::variant<val::Int, val::Atom, Var, FunId, val::Closure,
                            val::Nil, val::Cons, val::Tuple, val::Map>;
  explicit Value(Node n) : node(std::move(n)) {}
  Node node;
};

// ---------------------------------------------------------------------------
// Expressions

namespace expr {
struct Fun {
  std::vector<std::string> params;
  ExprPtr body;
};
struct Values { std::vector<ExprPtr> elems; };
struct Cons { ExprPtr head, tail; };
struct Tuple { std::vector<ExprPtr> elems; };
struct Map { std::vector<std::pair<ExprPtr, ExprPtr>> pairs; };
struct Call {
  ExprPtr module;
  ExprPtr function;
  std::vector<ExprPtr> args;
};
struct PrimOp {
  std::string name;
  std::vector<ExprPtr> args;
};
struct Apply {
  ExprPtr function;
  std::vector<ExprPtr> args;
};
struct Case {
  ExprPtr scrutinee;
  std::vector<Clause> clauses;
};
struct Let {
  std::vector<std::string> vars;
  ExprPtr bound;
  ExprPtr body;
};
struct Seq { ExprPtr first, second; };
struct LetRec {
  Ext ext;
  ExprPtr body;
};
/// try body of <vars> -> on_value catch <catch_vars> -> on_exception
struct Try {
  ExprPtr body;
  std::vector<std::string> vars;
  ExprPtr on_value;
  std::vector<std::string> catch_vars;
  ExprPtr on_exception;
};

ExprPtr val(ValuePtr v);
ExprPtr var(std::string id);
ExprPtr atom(std::string name);
ExprPtr integer(Integer i);
ExprPtr fun(std::vector<std::string> params, ExprPtr body);
ExprPtr values(std::vector<ExprPtr> elems);
ExprPtr cons(ExprPtr head, ExprPtr tail);
ExprPtr tuple(std::vector<ExprPtr> elems);
ExprPtr map(std::vector<std::pair<ExprPtr, ExprPtr>> pairs);
ExprPtr call(ExprPtr module, ExprPtr function, std::vector<ExprPtr> args);
ExprPtr call(std::string module, std::string function, std::vector<ExprPtr> args);
ExprPtr primop(std::string name, std::vector<ExprPtr> args);
ExprPtr apply(ExprPtr function, std::vector<ExprPtr> args);
ExprPtr case_(ExprPtr scrutinee, std::vector<Clause> clauses);
ExprPtr let(std::vector<std::string> vars, ExprPtr bound, ExprPtr body);
ExprPtr seq(ExprPtr first, ExprPtr second);
ExprPtr letrec(Ext ext, ExprPtr body);
ExprPtr try_(ExprPtr body, std::vector<std::string> vars, ExprPtr on_value,
             std::vector<std::string> catch_vars, ExprPtr on_exception);
}  // namespace expr

class Expr {
 public:
  using Node = std::variant<ValuePtr, expr::Fun, expr::Values, expr::Cons,
                            expr::Tuple, expr::Map, expr::Call, expr::PrimOp,
                            expr::Apply, expr::Case, expr::Let, expr::Seq,
                            expr::LetRec, expr::Try>;
  explicit Expr(Node n) : node(std::move(n)) {}

  /// The value if this expression is one, else nullptr.
  const ValuePtr* as_value() const { return std::get_if<ValuePtr>(&node); }

  Node node;
};

// ---------------------------------------------------------------------------
// Results and redexes

enum class ExcClass { Throw, Exit, Error };

std::string_view exc_class_name(ExcClass c);
std::optional<ExcClass> exc_class_from_atom(std::string_view atom);

struct Exception {
  ExcClass cls = ExcClass::Error;
  ValuePtr reason;
  ValuePtr details;
};

using ValueSeq = std::vector<ValuePtr>;
using Result = std::variant<ValueSeq, Exception>;

/// The placeholder redex that opens a parameter list.
struct Box {};

using Redex = std::variant<ExprPtr, ValueSeq, Exception, Box>;

Redex to_redex(const Result& r);

// ---------------------------------------------------------------------------
// Structural comparison

std::strong_ordering compare(const Value& a, const Value& b);
std::strong_ordering compare(const ValuePtr& a, const ValuePtr& b);
std::strong_ordering compare(const Expr& a, const Expr& b);
std::strong_ordering compare(const ExprPtr& a, const ExprPtr& b);
std::strong_ordering compare(const Pattern& a, const Pattern& b);
std::strong_ordering compare(const PatternPtr& a, const PatternPtr& b);
std::strong_ordering compare(const FunDef& a, const FunDef& b);
std::strong_ordering compare(const Clause& a, const Clause& b);
std::strong_ordering compare(const Exception& a, const Exception& b);
std::strong_ordering compare(const ValueSeq& a, const ValueSeq& b);

bool equal(const ValuePtr& a, const ValuePtr& b);
bool equal(const ExprPtr& a, const ExprPtr& b);
bool equal(const PatternPtr& a, const PatternPtr& b);
bool equal(const Result& a, const Result& b);
bool equal(const Redex& a, const Redex& b);

/// Strict weak ordering on ValuePtr by the term order.
struct ValueLess {
  bool operator()(const ValuePtr& a, const ValuePtr& b) const {
    return compare(a, b) < 0;
  }
};

bool contains_closure(const Value& v);

// ---------------------------------------------------------------------------
// Names and scoping

NameSet free_names(const Value& v);
NameSet free_names(const Expr& e);
NameSet free_names(const Exception& exc);
NameSet free_names(const Redex& r);

NameSet names_of(const Ext& ext);

bool is_closed(const Value& v);
bool is_closed(const Expr& e);
bool is_closed(const Redex& r);

/// Well-formedness: uniform clause arity per case, three catch binders per
/// try, and every f/k definition having k parameters.
bool well_formed(const Redex& r);
bool well_formed(const Expr& e);
bool well_formed(const Value& v);

/// gamma |- r: all free names of r are in gamma and r is well formed.
bool check_scope(const NameSet& gamma, const Redex& r);
bool check_scope(const NameSet& gamma, const ExprPtr& e);
bool check_scope(const NameSet& gamma, const ValuePtr& v);

}  // namespace cerl
