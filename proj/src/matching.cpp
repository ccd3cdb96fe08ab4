#include "cerl/matching.hpp"

#include <map>

namespace cerl {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void collect(const Pattern& p, std::set<std::string>& out) {
  std::visit(
      overloaded{
          [&](const pat::Var& x) { out.insert(x.id); },
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

const ValuePtr* map_lookup(const val::Map& m, const ValuePtr& key) {
  for (const auto& [k, x] : m.pairs) {
    if (equal(k, key)) return &x;
  }
  return nullptr;
}

// Decision procedure: tracks first occurrences only to check repeats.
class Matcher {
 public:
  bool matches(const Pattern& p, const ValuePtr& v) {
    return std::visit(
        overloaded{
            [&](const pat::Int& i) {
              const auto* x = std::get_if<val::Int>(&v->node);
              return x && x->value == i.value;
            },
            [&](const pat::Atom& a) {
              const auto* x = std::get_if<val::Atom>(&v->node);
              return x && x->name == a.name;
            },
            [&](const pat::Var& x) {
              auto [it, fresh] = seen_.emplace(x.id, v);
              return fresh || equal(it->second, v);
            },
            [&](const pat::Nil&) { return std::holds_alternative<val::Nil>(v->node); },
            [&](const pat::Cons& c) {
              const auto* x = std::get_if<val::Cons>(&v->node);
              return x && matches(*c.head, x->head) && matches(*c.tail, x->tail);
            },
            [&](const pat::Tuple& t) {
              const auto* x = std::get_if<val::Tuple>(&v->node);
              if (!x || x->elems.size() != t.elems.size()) return false;
              for (std::size_t i = 0; i < t.elems.size(); ++i) {
                if (!matches(*t.elems[i], x->elems[i])) return false;
              }
              return true;
            },
            [&](const pat::Map& m) {
              const auto* x = std::get_if<val::Map>(&v->node);
              if (!x) return false;
              for (const auto& [pk, pv] : m.pairs) {
                ValuePtr key = pattern_value(*pk);
                if (!key) return false;
                const ValuePtr* found = map_lookup(*x, key);
                if (!found || !matches(*pv, *found)) return false;
              }
              return true;
            },
        },
        p.node);
  }

 private:
  std::map<std::string, ValuePtr> seen_;
};

// Binding construction.
bool bind(const Pattern& p, const ValuePtr& v, Substitution& out) {
  return std::visit(
      overloaded{
          [&](const pat::Int& i) {
            const auto* x = std::get_if<val::Int>(&v->node);
            return x != nullptr && x->value == i.value;
          },
          [&](const pat::Atom& a) {
            const auto* x = std::get_if<val::Atom>(&v->node);
            return x != nullptr && x->name == a.name;
          },
          [&](const pat::Var& x) {
            auto it = out.find(Name{Var{x.id}});
            if (it != out.end()) return equal(it->second, v);
            out.emplace(Name{Var{x.id}}, v);
            return true;
          },
          [&](const pat::Nil&) { return std::holds_alternative<val::Nil>(v->node); },
          [&](const pat::Cons& c) {
            const auto* x = std::get_if<val::Cons>(&v->node);
            return x != nullptr && bind(*c.head, x->head, out) && bind(*c.tail, x->tail, out);
          },
          [&](const pat::Tuple& t) {
            const auto* x = std::get_if<val::Tuple>(&v->node);
            if (x == nullptr || x->elems.size() != t.elems.size()) return false;
            for (std::size_t i = 0; i < t.elems.size(); ++i) {
              if (!bind(*t.elems[i], x->elems[i], out)) return false;
            }
            return true;
          },
          [&](const pat::Map& m) {
            const auto* x = std::get_if<val::Map>(&v->node);
            if (x == nullptr) return false;
            for (const auto& [pk, pv] : m.pairs) {
              ValuePtr key = pattern_value(*pk);
              if (!key) return false;
              const ValuePtr* found = map_lookup(*x, key);
              if (found == nullptr || !bind(*pv, *found, out)) return false;
            }
            return true;
          },
      },
      p.node);
}

}  // namespace

std::set<std::string> vars(const Pattern& p) {
  std::set<std::string> out;
  collect(p, out);
  return out;
}

std::set<std::string> vars(const std::vector<PatternPtr>& ps) {
  std::set<std::string> out;
  for (const auto& p : ps) collect(*p, out);
  return out;
}

ValuePtr pattern_value(const Pattern& p) {
  return std::visit(
      overloaded{
          [](const pat::Int& i) -> ValuePtr { return val::integer(i.value); },
          [](const pat::Atom& a) -> ValuePtr { return val::atom(a.name); },
          [](const pat::Var&) -> ValuePtr { return nullptr; },
          [](const pat::Nil&) -> ValuePtr { return val::nil(); },
          [](const pat::Cons& c) -> ValuePtr {
            auto h = pattern_value(*c.head);
            auto t = pattern_value(*c.tail);
            return (h && t) ? val::cons(h, t) : nullptr;
          },
          [](const pat::Tuple& t) -> ValuePtr {
            std::vector<ValuePtr> elems;
            for (const auto& e : t.elems) {
              auto v = pattern_value(*e);
              if (!v) return nullptr;
              elems.push_back(std::move(v));
            }
            return val::tuple(std::move(elems));
          },
          [](const pat::Map& m) -> ValuePtr {
            std::vector<std::pair<ValuePtr, ValuePtr>> pairs;
            for (const auto& [k, x] : m.pairs) {
              auto kv = pattern_value(*k);
              auto xv = pattern_value(*x);
              if (!kv || !xv) return nullptr;
              pairs.emplace_back(std::move(kv), std::move(xv));
            }
            return val::map(std::move(pairs));
          },
      },
      p.node);
}

bool is_match(const std::vector<PatternPtr>& ps, const ValueSeq& vs) {
  if (ps.size() != vs.size()) return false;
  Matcher m;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    if (!m.matches(*ps[i], vs[i])) return false;
  }
  return true;
}

std::optional<Substitution> match(const std::vector<PatternPtr>& ps, const ValueSeq& vs) {
  if (ps.size() != vs.size()) return std::nullopt;
  Substitution out;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    if (!bind(*ps[i], vs[i], out)) return std::nullopt;
  }
  return out;
}

}  // namespace cerl
