#include "cerl/builtins.hpp"

#include <utility>

namespace cerl {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

ValuePtr boolean(bool b) { return b ? val::true_atom() : val::false_atom(); }

ValuePtr args_list(std::span<const ValuePtr> args) {
  return val::list(std::vector<ValuePtr>(args.begin(), args.end()));
}

// badarg details: the argument itself for unary BIFs, the argument list
// otherwise.
Result badarg(std::span<const ValuePtr> args) {
  return error_exception(val::atom("badarg"), args.size() == 1 ? args[0] : args_list(args));
}

const Integer* as_int(const ValuePtr& v) {
  const auto* i = std::get_if<val::Int>(&v->node);
  return i ? &i->value : nullptr;
}

std::optional<bool> as_bool(const ValuePtr& v) {
  const auto* a = std::get_if<val::Atom>(&v->node);
  if (!a) return std::nullopt;
  if (a->name == "true") return true;
  if (a->name == "false") return false;
  return std::nullopt;
}

template <class Op>
BifFn arith(Op op) {
  return [op](std::span<const ValuePtr> args) -> Result {
    const Integer* a = as_int(args[0]);
    const Integer* b = as_int(args[1]);
    if (!a || !b) return badarg(args);
    return ValueSeq{val::integer(op(*a, *b))};
  };
}

template <class Op>
BifFn division(Op op) {
  return [op](std::span<const ValuePtr> args) -> Result {
    const Integer* a = as_int(args[0]);
    const Integer* b = as_int(args[1]);
    if (!a || !b) return badarg(args);
    if (*b == 0) return error_exception(val::atom("badarith"), args_list(args));
    return ValueSeq{val::integer(op(*a, *b))};
  };
}

template <class Pred>
BifFn comparison(Pred pred) {
  return [pred](std::span<const ValuePtr> args) -> Result {
    return ValueSeq{boolean(pred(compare(args[0], args[1])))};
  };
}

template <class Op>
BifFn logic(Op op) {
  return [op](std::span<const ValuePtr> args) -> Result {
    auto a = as_bool(args[0]);
    auto b = as_bool(args[1]);
    if (!a || !b) return badarg(args);
    return ValueSeq{boolean(op(*a, *b))};
  };
}

Result length(std::span<const ValuePtr> args) {
  Integer n = 0;
  const Value* cur = args[0].get();
  while (const auto* c = std::get_if<val::Cons>(&cur->node)) {
    ++n;
    cur = c->tail.get();
  }
  if (!std::holds_alternative<val::Nil>(cur->node)) return badarg(args);
  return ValueSeq{val::integer(std::move(n))};
}

Result hd(std::span<const ValuePtr> args) {
  const auto* c = std::get_if<val::Cons>(&args[0]->node);
  if (!c) return badarg(args);
  return ValueSeq{c->head};
}

Result tl(std::span<const ValuePtr> args) {
  const auto* c = std::get_if<val::Cons>(&args[0]->node);
  if (!c) return badarg(args);
  return ValueSeq{c->tail};
}

Result element(std::span<const ValuePtr> args) {
  const Integer* n = as_int(args[0]);
  const auto* t = std::get_if<val::Tuple>(&args[1]->node);
  if (!n || !t || *n < 1 || *n > t->elems.size()) return badarg(args);
  return ValueSeq{t->elems[static_cast<std::size_t>(*n) - 1]};
}

Result tuple_size(std::span<const ValuePtr> args) {
  const auto* t = std::get_if<val::Tuple>(&args[0]->node);
  if (!t) return badarg(args);
  return ValueSeq{val::integer(t->elems.size())};
}

Result negate(std::span<const ValuePtr> args) {
  const Integer* a = as_int(args[0]);
  if (!a) return badarg(args);
  return ValueSeq{val::integer(-*a)};
}

Result logical_not(std::span<const ValuePtr> args) {
  auto a = as_bool(args[0]);
  if (!a) return badarg(args);
  return ValueSeq{boolean(!*a)};
}

BifTable make_standard() {
  BifTable t;
  t.add("erlang", "+", 2, arith([](const Integer& a, const Integer& b) { return Integer(a + b); }));
  t.add("erlang", "-", 2, arith([](const Integer& a, const Integer& b) { return Integer(a - b); }));
  t.add("erlang", "-", 1, negate);
  t.add("erlang", "*", 2, arith([](const Integer& a, const Integer& b) { return Integer(a * b); }));
  // cpp_int division truncates toward zero and rem takes the dividend's
  // sign, as in Erlang.
  t.add("erlang", "div", 2, division([](const Integer& a, const Integer& b) { return Integer(a / b); }));
  t.add("erlang", "rem", 2, division([](const Integer& a, const Integer& b) { return Integer(a % b); }));
  t.add("erlang", "==", 2, comparison([](std::strong_ordering o) { return o == 0; }));
  t.add("erlang", "/=", 2, comparison([](std::strong_ordering o) { return o != 0; }));
  t.add("erlang", "<", 2, comparison([](std::strong_ordering o) { return o < 0; }));
  t.add("erlang", "=<", 2, comparison([](std::strong_ordering o) { return o <= 0; }));
  t.add("erlang", ">", 2, comparison([](std::strong_ordering o) { return o > 0; }));
  t.add("erlang", ">=", 2, comparison([](std::strong_ordering o) { return o >= 0; }));
  t.add("erlang", "length", 1, length);
  t.add("erlang", "hd", 1, hd);
  t.add("erlang", "tl", 1, tl);
  t.add("erlang", "element", 2, element);
  t.add("erlang", "tuple_size", 1, tuple_size);
  t.add("erlang", "and", 2, logic([](bool a, bool b) { return a && b; }));
  t.add("erlang", "or", 2, logic([](bool a, bool b) { return a || b; }));
  t.add("erlang", "not", 1, logical_not);
  return t;
}

Redex apply_closure(const ValuePtr& fn, std::span<const ValuePtr> args) {
  const auto* clos = std::get_if<val::Closure>(&fn->node);
  if (!clos) return error_exception(val::atom("badfun"), fn);
  if (clos->params.size() != args.size()) return error_exception(val::atom("badarity"), fn);
  Substitution s = mk_closlist(clos->ext);
  for (std::size_t i = 0; i < args.size(); ++i) s.insert_or_assign(Var{clos->params[i]}, args[i]);
  return cerl::apply(clos->body, s);
}

Redex call_bif(const frame_id::Call& id, std::span<const ValuePtr> args, const BifTable& bifs) {
  const auto* m = std::get_if<val::Atom>(&id.module->node);
  const auto* f = std::get_if<val::Atom>(&id.function->node);
  if (m && f) {
    if (const BifFn* fn = bifs.find(m->name, f->name, args.size())) return to_redex((*fn)(args));
  }
  return error_exception(val::atom("undef"),
                         val::tuple({id.module, id.function, val::integer(args.size())}));
}

Redex primop(const std::string& name, std::span<const ValuePtr> args) {
  if (name == "match_fail" && args.size() == 1) {
    // {function_clause, V...} raises function_clause with the rest as
    // details; any other argument becomes the reason.
    if (const auto* t = std::get_if<val::Tuple>(&args[0]->node); t && !t->elems.empty()) {
      const auto* tag = std::get_if<val::Atom>(&t->elems[0]->node);
      if (tag && tag->name == "function_clause") {
        std::vector<ValuePtr> rest(t->elems.begin() + 1, t->elems.end());
        ValuePtr details = rest.size() == 1 ? rest[0] : val::list(std::move(rest));
        return error_exception(t->elems[0], std::move(details));
      }
    }
    return error_exception(args[0], val::nil());
  }
  if (name == "raise" && (args.size() == 2 || args.size() == 3)) {
    const auto* cls = std::get_if<val::Atom>(&args[0]->node);
    auto c = cls ? exc_class_from_atom(cls->name) : std::nullopt;
    if (!c) return error_exception(val::atom("badarg"), args_list(args));
    return Exception{*c, args[1], args.size() == 3 ? args[2] : val::nil()};
  }
  return error_exception(val::atom("undef"), val::atom(name));
}

}  // namespace

const BifTable& BifTable::standard() {
  static const BifTable kTable = make_standard();
  return kTable;
}

void BifTable::add(std::string module, std::string function, std::size_t arity, BifFn fn) {
  table_.insert_or_assign(Key{std::move(module), std::move(function), arity}, std::move(fn));
}

const BifFn* BifTable::find(const std::string& module, const std::string& function,
                            std::size_t arity) const {
  auto it = table_.find(Key{module, function, arity});
  return it == table_.end() ? nullptr : &it->second;
}

Exception error_exception(ValuePtr reason, ValuePtr details) {
  return Exception{ExcClass::Error, std::move(reason), std::move(details)};
}

Exception if_clause_exception() {
  return error_exception(val::atom("if_clause"), val::tuple({}));
}

ValuePtr bif_equal(const ValuePtr& a, const ValuePtr& b) { return boolean(equal(a, b)); }

Redex eval(const FrameId& id, std::span<const ValuePtr> args, const BifTable& bifs) {
  return std::visit(
      overloaded{
          [&](const frame_id::App& app) { return apply_closure(app.function, args); },
          [&](const frame_id::Tuple&) -> Redex {
            return ValueSeq{val::tuple(std::vector<ValuePtr>(args.begin(), args.end()))};
          },
          [&](const frame_id::Values&) -> Redex { return ValueSeq(args.begin(), args.end()); },
          [&](const frame_id::Map&) -> Redex {
            if (args.size() % 2 != 0) return error_exception(val::atom("badarg"), args_list(args));
            std::vector<std::pair<ValuePtr, ValuePtr>> pairs;
            for (std::size_t i = 0; i < args.size(); i += 2) pairs.emplace_back(args[i], args[i + 1]);
            return ValueSeq{val::map(std::move(pairs))};
          },
          [&](const frame_id::Call& c) { return call_bif(c, args, bifs); },
          [&](const frame_id::PrimOp& p) { return primop(p.name, args); },
      },
      id);
}

}  // namespace cerl
