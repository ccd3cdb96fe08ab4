#include "cerl/equiv.hpp"

#include "cerl/builtins.hpp"
#include "cerl/generate.hpp"

namespace cerl {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// Split off independent streams from the configured seed.
constexpr std::uint64_t kSubstStream = 0x5eed0001;
constexpr std::uint64_t kStackStream = 0x5eed0002;
constexpr std::uint64_t kProbeStream = 0x5eed0003;

/// Gets stuck on a let binder arity mismatch; distinguishes "terminates"
/// from "does not" without looping.
ExprPtr stuck_expr() {
  return expr::let({"S1", "S2"}, expr::atom("stuck"), expr::atom("stuck"));
}

std::vector<ValuePtr> fixed_values() {
  return {
      val::nil(),
      val::list({val::integer(1)}),
      val::list({val::integer(1), val::integer(2)}),
      val::integer(0),
      val::atom("a"),
      val::tuple({}),
      val::tuple({val::integer(1), val::atom("a")}),
      val::integer(1),
      val::integer(-1),
      val::true_atom(),
      val::false_atom(),
      val::map({}),
      val::cons(val::integer(0), val::integer(1)),
      val::tuple({val::nil()}),
  };
}

bool values_distinguishable(const ValuePtr& a, const ValuePtr& b) {
  if (a->node.index() != b->node.index()) return true;
  return std::visit(
      overloaded{
          [&](const val::Int& x) { return x.value != std::get<val::Int>(b->node).value; },
          [&](const val::Atom& x) { return x.name != std::get<val::Atom>(b->node).name; },
          [&](const Var& x) { return x != std::get<Var>(b->node); },
          [&](const FunId& x) { return x != std::get<FunId>(b->node); },
          [&](const val::Closure&) { return false; },
          [&](const val::Nil&) { return false; },
          [&](const val::Cons& x) {
            const auto& y = std::get<val::Cons>(b->node);
            return values_distinguishable(x.head, y.head) || values_distinguishable(x.tail, y.tail);
          },
          [&](const val::Tuple& x) {
            const auto& y = std::get<val::Tuple>(b->node);
            if (x.elems.size() != y.elems.size()) return true;
            for (std::size_t i = 0; i < x.elems.size(); ++i) {
              if (values_distinguishable(x.elems[i], y.elems[i])) return true;
            }
            return false;
          },
          [&](const val::Map& x) {
            const auto& y = std::get<val::Map>(b->node);
            if (x.pairs.size() != y.pairs.size()) return true;
            for (std::size_t i = 0; i < x.pairs.size(); ++i) {
              if (values_distinguishable(x.pairs[i].first, y.pairs[i].first) ||
                  values_distinguishable(x.pairs[i].second, y.pairs[i].second)) {
                return true;
              }
            }
            return false;
          },
      },
      a->node);
}

// A frame that finishes with 'ok' exactly when the redex below produced
// `res` (up to closures), and gets stuck otherwise.
Frame inspection_frame(const Result& res, Generator& gen) {
  if (const auto* vs = std::get_if<ValueSeq>(&res)) {
    std::vector<PatternPtr> exact, any;
    for (const auto& v : *vs) {
      exact.push_back(gen.pattern_for(v, 0.0));
      any.push_back(pat::var(gen.fresh_var()));
    }
    return frame::CaseScrutinee{{Clause{exact, expr::atom("true"), expr::atom("ok")},
                                 Clause{any, expr::atom("true"), stuck_expr()}}};
  }
  const auto& exc = std::get<Exception>(res);
  ValuePtr parts = val::tuple({val::atom(std::string(exc_class_name(exc.cls))), exc.reason, exc.details});
  std::vector<std::string> cs{gen.fresh_var(), gen.fresh_var(), gen.fresh_var()};
  ExprPtr inspect = expr::case_(
      expr::tuple({expr::var(cs[0]), expr::var(cs[1]), expr::var(cs[2])}),
      {Clause{{gen.pattern_for(parts, 0.0)}, expr::atom("true"), expr::atom("ok")},
       Clause{{pat::var(gen.fresh_var())}, expr::atom("true"), stuck_expr()}});
  return frame::TryFirst{{gen.fresh_var()}, stuck_expr(), cs, inspect};
}

std::vector<std::vector<ValuePtr>> probe_args(std::size_t arity, const EquivConfig& cfg, Generator& gen) {
  std::vector<std::vector<ValuePtr>> out;
  std::vector<ValuePtr> fixed = fixed_values();
  for (std::size_t t = 0; t < 3; ++t) {
    std::vector<ValuePtr> args;
    for (std::size_t i = 0; i < arity; ++i) {
      args.push_back(t == 0 ? fixed[(i + t) % fixed.size()] : gen.value(cfg.value_depth_max));
    }
    out.push_back(std::move(args));
    if (arity == 0) break;
  }
  return out;
}

std::vector<ExprPtr> as_exprs(const std::vector<ValuePtr>& vs) {
  std::vector<ExprPtr> out;
  for (const auto& v : vs) out.push_back(expr::val(v));
  return out;
}

// Stacks built from what the two sides actually produced on the empty
// stack: result inspection, sequencing, and application probes for
// closure results.
std::vector<FrameStack> adversarial_stacks(const Redex& l, const Redex& r,
                                           const TerminationReport& lr,
                                           const TerminationReport& rr,
                                           const EquivConfig& cfg, Generator& gen) {
  std::vector<FrameStack> out;
  auto single = [](Frame f) {
    FrameStack k;
    k.push(std::move(f));
    return k;
  };
  for (const TerminationReport* rep : {&lr, &rr}) {
    if (!rep->result) continue;
    out.push_back(single(inspection_frame(*rep->result, gen)));
    const auto* vs = std::get_if<ValueSeq>(&*rep->result);
    if (!vs || vs->size() != 1) continue;
    const auto* clos = std::get_if<val::Closure>(&(*vs)[0]->node);
    if (!clos) continue;
    for (const auto& args : probe_args(clos->params.size(), cfg, gen)) {
      FrameStack app = single(frame::AppFn{as_exprs(args)});
      out.push_back(app);
      for (const Redex* side : {&l, &r}) {
        TerminationReport probe = terminates(app, *side, cfg.fuel);
        if (!probe.result) continue;
        out.push_back(FrameStack::from_top_first({frame::AppFn{as_exprs(args)},
                                                  inspection_frame(*probe.result, gen)}));
      }
    }
  }
  out.push_back(single(frame::SeqFirst{expr::atom("ok")}));
  return out;
}

enum class TrialOutcome { Pass, Fail, Unknown };

TrialOutcome le_trial(const TerminationReport& l, const TerminationReport& r, bool empty_stack,
                      std::string& why) {
  switch (l.status) {
    case Termination::Stuck: return TrialOutcome::Pass;
    case Termination::Unknown: return TrialOutcome::Unknown;
    case Termination::Terminates: break;
  }
  switch (r.status) {
    case Termination::Stuck:
      why = "one side terminates, the other gets stuck: " + r.stuck_reason;
      return TrialOutcome::Fail;
    case Termination::Unknown: return TrialOutcome::Unknown;
    case Termination::Terminates: break;
  }
  if (empty_stack && distinguishable(*l.result, *r.result)) {
    why = "different results on the empty stack";
    return TrialOutcome::Fail;
  }
  return TrialOutcome::Pass;
}

EquivVerdict run_suite(const Redex& r1, const Redex& r2, const NameSet& gamma,
                       const EquivConfig& cfg, bool both_directions) {
  EquivVerdict verdict;
  verdict.seed = cfg.seed;
  verdict.fuel = cfg.fuel;
  std::vector<Substitution> substs = closing_substitutions(gamma, cfg);
  verdict.substitutions = substs.size();
  verdict.stacks_per_substitution = cfg.num_stacks;

  for (std::size_t si = 0; si < substs.size(); ++si) {
    const Substitution& s = substs[si];
    Redex l = cerl::apply(r1, s);
    Redex r = cerl::apply(r2, s);
    TerminationReport l0 = terminates({}, l, cfg.fuel);
    TerminationReport r0 = terminates({}, r, cfg.fuel);

    Generator gen(cfg.seed ^ (kStackStream + si * 0x9e3779b97f4a7c15ULL));
    std::vector<FrameStack> stacks = adversarial_stacks(l, r, l0, r0, cfg, gen);
    stacks.push_back(FrameStack{});
    for (std::size_t k = 0; k < cfg.num_stacks; ++k) {
      stacks.push_back(gen.stack(static_cast<std::size_t>(cfg.stack_depth_max), cfg.value_depth_max));
    }

    for (const FrameStack& k : stacks) {
      const bool empty = k.empty();
      TerminationReport lt = empty ? l0 : terminates(k, l, cfg.fuel);
      TerminationReport rt = empty ? r0 : terminates(k, r, cfg.fuel);
      ++verdict.trials;
      std::string why;
      TrialOutcome out = le_trial(lt, rt, empty, why);
      if (both_directions && out != TrialOutcome::Fail) {
        std::string why_back;
        TrialOutcome back = le_trial(rt, lt, empty, why_back);
        if (back == TrialOutcome::Fail) {
          out = back;
          why = why_back;
        } else if (back == TrialOutcome::Unknown) {
          out = TrialOutcome::Unknown;
        }
      }
      if (out == TrialOutcome::Fail) {
        verdict.kind = VerdictKind::Inequivalent;
        verdict.reason = why;
        verdict.witness = Witness{k, s, lt, rt};
        return verdict;
      }
      if (out == TrialOutcome::Unknown) {
        ++verdict.unknown_trials;
        if (!verdict.witness) verdict.witness = Witness{k, s, lt, rt};
      }
    }
  }
  if (verdict.unknown_trials > 0) {
    verdict.kind = VerdictKind::Unknown;
    verdict.reason = "fuel";
  }
  return verdict;
}

bool results_related(const Result& a, const Result& b, int depth, const EquivConfig& cfg) {
  if (a.index() != b.index()) return false;
  if (const auto* x = std::get_if<ValueSeq>(&a)) {
    const auto& y = std::get<ValueSeq>(b);
    if (x->size() != y.size()) return false;
    for (std::size_t i = 0; i < x->size(); ++i) {
      if (!value_rel((*x)[i], y[i], depth, cfg)) return false;
    }
    return true;
  }
  const auto& x = std::get<Exception>(a);
  const auto& y = std::get<Exception>(b);
  return x.cls == y.cls && value_rel(x.reason, y.reason, depth, cfg) &&
         value_rel(x.details, y.details, depth, cfg);
}

}  // namespace

std::string_view verdict_name(VerdictKind k) {
  switch (k) {
    case VerdictKind::Equivalent: return "Equivalent";
    case VerdictKind::Inequivalent: return "Inequivalent";
    case VerdictKind::Unknown: return "Unknown";
  }
  return "?";
}

std::vector<Substitution> closing_substitutions(const NameSet& gamma, const EquivConfig& cfg) {
  if (gamma.empty()) return {Substitution{}};
  Generator gen(cfg.seed ^ kSubstStream);
  std::vector<ValuePtr> fixed = fixed_values();
  std::vector<Substitution> out;
  for (std::size_t i = 0; i < cfg.num_substitutions; ++i) {
    Substitution s;
    std::size_t j = 0;
    for (const Name& n : gamma) {
      if (const auto* f = std::get_if<FunId>(&n)) {
        s.emplace(n, gen.closure(f->arity, cfg.value_depth_max));
      } else if (i < fixed.size()) {
        s.emplace(n, fixed[(i + 3 * j) % fixed.size()]);
      } else {
        s.emplace(n, gen.value(cfg.value_depth_max, true));
      }
      ++j;
    }
    out.push_back(std::move(s));
  }
  return out;
}

EquivVerdict ciu_le(const Redex& r1, const Redex& r2, const NameSet& gamma, const EquivConfig& cfg) {
  return run_suite(r1, r2, gamma, cfg, false);
}

EquivVerdict ciu_equiv(const Redex& r1, const Redex& r2, const NameSet& gamma, const EquivConfig& cfg) {
  return run_suite(r1, r2, gamma, cfg, true);
}

std::pair<TerminationReport, TerminationReport> replay(const Witness& w, const Redex& r1,
                                                       const Redex& r2, std::size_t fuel) {
  return {terminates(w.stack, cerl::apply(r1, w.subst), fuel),
          terminates(w.stack, cerl::apply(r2, w.subst), fuel)};
}

bool distinguishable(const Result& a, const Result& b) {
  if (a.index() != b.index()) return true;
  if (const auto* x = std::get_if<ValueSeq>(&a)) {
    const auto& y = std::get<ValueSeq>(b);
    if (x->size() != y.size()) return true;
    for (std::size_t i = 0; i < x->size(); ++i) {
      if (values_distinguishable((*x)[i], y[i])) return true;
    }
    return false;
  }
  const auto& x = std::get<Exception>(a);
  const auto& y = std::get<Exception>(b);
  return x.cls != y.cls || values_distinguishable(x.reason, y.reason) ||
         values_distinguishable(x.details, y.details);
}

bool value_rel(const ValuePtr& a, const ValuePtr& b, int depth_budget, const EquivConfig& cfg) {
  if (a->node.index() != b->node.index()) return false;
  return std::visit(
      overloaded{
          [&](const val::Closure& x) {
            const auto& y = std::get<val::Closure>(b->node);
            if (x.params.size() != y.params.size()) return false;
            if (depth_budget <= 0) return true;
            Generator gen(cfg.seed ^ kProbeStream);
            for (const auto& args : probe_args(x.params.size(), cfg, gen)) {
              Redex ra = eval(frame_id::App{a}, args);
              Redex rb = eval(frame_id::App{b}, args);
              TerminationReport ta = terminates({}, ra, cfg.fuel);
              TerminationReport tb = terminates({}, rb, cfg.fuel);
              if (ta.terminated() != tb.terminated()) return false;
              if (ta.terminated() && !results_related(*ta.result, *tb.result, depth_budget - 1, cfg)) {
                return false;
              }
            }
            return true;
          },
          [&](const val::Cons& x) {
            const auto& y = std::get<val::Cons>(b->node);
            return value_rel(x.head, y.head, depth_budget, cfg) && value_rel(x.tail, y.tail, depth_budget, cfg);
          },
          [&](const val::Tuple& x) {
            const auto& y = std::get<val::Tuple>(b->node);
            if (x.elems.size() != y.elems.size()) return false;
            for (std::size_t i = 0; i < x.elems.size(); ++i) {
              if (!value_rel(x.elems[i], y.elems[i], depth_budget, cfg)) return false;
            }
            return true;
          },
          [&](const val::Map& x) {
            const auto& y = std::get<val::Map>(b->node);
            if (x.pairs.size() != y.pairs.size()) return false;
            for (std::size_t i = 0; i < x.pairs.size(); ++i) {
              if (!value_rel(x.pairs[i].first, y.pairs[i].first, depth_budget, cfg) ||
                  !value_rel(x.pairs[i].second, y.pairs[i].second, depth_budget, cfg)) {
                return false;
              }
            }
            return true;
          },
          [&](const auto&) { return equal(a, b); },
      },
      a->node);
}

ValuesEqualReport check_related_values_equal(const std::vector<std::pair<ValuePtr, ValuePtr>>& pairs) {
  ValuesEqualReport rep;
  for (const auto& [a, b] : pairs) {
    ++rep.checked;
    if (!equal(bif_equal(a, b), val::true_atom())) rep.counterexamples.emplace_back(a, b);
  }
  return rep;
}

}  // namespace cerl
