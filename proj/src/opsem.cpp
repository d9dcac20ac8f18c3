#include "pcfss/opsem.hpp"

#include <cmath>

#include "pcfss/parse.hpp"

namespace pcfss {

const char* to_string(BlockReason r) {
  switch (r) {
    case BlockReason::TraceUnderflow: return "TraceUnderflow";
    case BlockReason::ValueReached: return "ValueReached";
    case BlockReason::NotReal: return "NotReal";
  }
  return "?";
}

const char* to_string(Undefined u) {
  switch (u) {
    case Undefined::TraceUnderflow: return "TraceUnderflow";
    case Undefined::TraceLeftover: return "TraceLeftover";
    case Undefined::FuelExhausted: return "FuelExhausted";
    case Undefined::Stuck: return "Stuck";
  }
  return "?";
}

namespace {

Term apply_fn(const Value& fn, const Value& arg) {
  switch (fn.kind()) {
    case Value::Kind::Lam: return substitute(fn.body(), fn.name(), arg);
    case Value::Kind::Fix: {
      if (fn.name() == fn.param()) return substitute(fn.body(), fn.param(), arg);
      return substitute(substitute(fn.body(), fn.name(), fn), fn.param(), arg);
    }
    default: throw NotARedex("application of a non-function value: " + print_value(fn));
  }
}

}  // namespace

Term det_reduce(const Term& r, const PrimRegistry& prims) {
  switch (r.kind()) {
    case Term::Kind::App: return apply_fn(r.value(), r.arg());
    case Term::Kind::Let:
      if (!r.bound().is_value()) break;
      return substitute(r.body(), r.var(), r.bound().value());
    case Term::Kind::If:
      if (r.value().kind() != Value::Kind::Real) break;
      return r.value().real() == 0.0 ? r.then_branch() : r.else_branch();
    case Term::Kind::Prim: {
      std::vector<double> xs;
      xs.reserve(r.args().size());
      for (const auto& a : r.args()) {
        if (a.kind() != Value::Kind::Real) throw NotARedex("primitive argument is not a constant");
        xs.push_back(a.real());
      }
      return Term::val(Value::real(prims.apply(r.prim_id(), xs)));
    }
    default: break;
  }
  throw NotARedex("not a deterministic redex: " + print_term(r, prims));
}

namespace {

// Contracts one redex in place of the hole.  `draw` returns nullopt when
// the trace is exhausted.
template <class Draw>
std::optional<Term> contract(const Term& redex, double& weight, Draw&& draw,
                             const PrimRegistry& prims) {
  switch (redex.kind()) {
    case Term::Kind::Sample: {
      std::optional<double> b = draw();
      if (!b) return std::nullopt;
      return Term::val(Value::real(*b));
    }
    case Term::Kind::Score: {
      const Value& v = redex.value();
      if (v.kind() != Value::Kind::Real) throw NotARedex("score of a non-constant");
      weight = std::fabs(v.real()) * weight;
      return Term::val(Value::skip());
    }
    default: return det_reduce(redex, prims);
  }
}

template <class Draw>
RunOutcome run(const Term& t, double weight, Draw&& draw, std::uint64_t fuel,
               const PrimRegistry& prims, const std::function<Trace()>& leftover) {
  // The let-frame stack is kept across steps rather than re-decomposing.
  EvalContext ctx;
  Term focus = t;
  std::uint64_t steps = 0;
  for (;;) {
    while (focus.kind() == Term::Kind::Let && !focus.bound().is_value()) {
      ctx.frames.push_back({focus.var(), focus.body()});
      Term inner = focus.bound();
      focus = inner;
    }
    if (focus.is_value() && ctx.frames.empty()) {
      const Value& v = focus.value();
      if (v.kind() != Value::Kind::Real) return Blocked{BlockReason::NotReal, steps};
      return Terminated{v.real(), weight, leftover(), steps};
    }
    if (steps >= fuel) return FuelExhausted{steps};
    if (focus.is_value()) {
      LetFrame f = std::move(ctx.frames.back());
      ctx.frames.pop_back();
      focus = substitute(f.body, f.var, focus.value());
    } else {
      std::optional<Term> next = contract(focus, weight, draw, prims);
      if (!next) return Blocked{BlockReason::TraceUnderflow, steps};
      focus = std::move(*next);
    }
    ++steps;
  }
}

}  // namespace

StepResult step_config(const Config& c, const PrimRegistry& prims) {
  auto d = decompose(c.term);
  if (!d) return Blocked{BlockReason::ValueReached, 0};
  Config out{c.term, c.weight, c.trace};
  std::size_t consumed = 0;
  auto draw = [&]() -> std::optional<double> {
    if (c.trace.empty()) return std::nullopt;
    consumed = 1;
    return c.trace.front();
  };
  std::optional<Term> next = contract(d->redex, out.weight, draw, prims);
  if (!next) return Blocked{BlockReason::TraceUnderflow, 0};
  out.term = plug(d->ctx, std::move(*next));
  if (consumed) out.trace.erase(out.trace.begin());
  return out;
}

RunOutcome eval_sampling(const Term& t, double weight0, const Trace& trace, std::uint64_t fuel,
                         const PrimRegistry& prims) {
  std::size_t pos = 0;
  auto draw = [&]() -> std::optional<double> {
    if (pos >= trace.size()) return std::nullopt;
    return trace[pos++];
  };
  auto leftover = [&]() { return Trace(trace.begin() + static_cast<std::ptrdiff_t>(pos), trace.end()); };
  return run(t, weight0, draw, fuel, prims, leftover);
}

RunOutcome eval_lazy(const Term& t, double weight0, const std::function<double()>& draw,
                     std::uint64_t fuel, const PrimRegistry& prims) {
  auto d = [&]() -> std::optional<double> { return draw(); };
  return run(t, weight0, d, fuel, prims, [] { return Trace{}; });
}

std::variant<WeightVal, Undefined> weight_val(const Term& t, const Trace& trace,
                                              std::uint64_t fuel, double weight0,
                                              const PrimRegistry& prims) {
  RunOutcome r = eval_sampling(t, weight0, trace, fuel, prims);
  if (auto* done = std::get_if<Terminated>(&r)) {
    if (!done->leftover.empty()) return Undefined::TraceLeftover;
    return WeightVal{done->weight, done->value};
  }
  if (std::holds_alternative<FuelExhausted>(r)) return Undefined::FuelExhausted;
  const auto& b = std::get<Blocked>(r);
  return b.reason == BlockReason::TraceUnderflow ? Undefined::TraceUnderflow : Undefined::Stuck;
}

}  // namespace pcfss
