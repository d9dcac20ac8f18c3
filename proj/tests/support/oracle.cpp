#include "oracle.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <variant>

#include "pcfss/prims.hpp"

namespace pcfss::testkit {

namespace {

struct Closure;
using Val = std::variant<std::monostate, double, std::shared_ptr<Closure>>;
using Env = std::shared_ptr<const std::map<std::string, Val>>;

struct Closure {
  std::string self;  // empty unless a fixpoint
  std::string param;
  Term body;
  Env env;
};

struct Undefined {};

class Evaluator {
 public:
  Evaluator(double w, std::function<double()> draw, std::uint64_t fuel)
      : weight_(w), draw_(std::move(draw)), fuel_(fuel) {}

  double weight_;
  Trace used_;

  Val term(const Term& t, const Env& env) {
    switch (t.kind()) {
      case Term::Kind::Val: return value(t.value(), env);
      case Term::Kind::App: return apply(value(t.value(), env), value(t.arg(), env));
      case Term::Kind::Let: {
        Val v = term(t.bound(), env);
        return term(t.body(), bind(env, t.var(), v));
      }
      case Term::Kind::If: {
        double g = std::get<double>(value(t.value(), env));
        return term(g == 0.0 ? t.then_branch() : t.else_branch(), env);
      }
      case Term::Kind::Prim: {
        std::vector<double> args;
        for (const auto& a : t.args()) args.push_back(std::get<double>(value(a, env)));
        return builtin_prims().apply(t.prim_id(), args);
      }
      case Term::Kind::Sample: {
        double b = draw_();
        used_.push_back(b);
        return b;
      }
      case Term::Kind::Score: {
        double a = std::get<double>(value(t.value(), env));
        weight_ = std::fabs(a) * weight_;
        return std::monostate{};
      }
    }
    throw std::logic_error("oracle: unknown term");
  }

 private:
  static Env bind(const Env& env, const std::string& x, Val v) {
    auto m = std::make_shared<std::map<std::string, Val>>(*env);
    (*m)[x] = std::move(v);
    return m;
  }

  Val value(const Value& v, const Env& env) {
    switch (v.kind()) {
      case Value::Kind::Skip: return std::monostate{};
      case Value::Kind::Real: return v.real();
      case Value::Kind::Var: return env->at(v.name());
      case Value::Kind::Lam:
        return std::make_shared<Closure>(Closure{"", v.name(), v.body(), env});
      case Value::Kind::Fix:
        return std::make_shared<Closure>(Closure{v.name(), v.param(), v.body(), env});
    }
    throw std::logic_error("oracle: unknown value");
  }

  Val apply(const Val& f, const Val& a) {
    if (fuel_-- == 0) throw Undefined{};
    const auto& c = std::get<std::shared_ptr<Closure>>(f);
    Env env = c->env;
    if (!c->self.empty()) env = bind(env, c->self, f);
    return term(c->body, bind(env, c->param, a));
  }

  std::function<double()> draw_;
  std::uint64_t fuel_;
};

std::optional<OracleResult> run(const Term& t, double w0, std::function<double()> draw,
                                std::uint64_t fuel) {
  Evaluator ev(w0, std::move(draw), fuel);
  try {
    Val v = ev.term(t, std::make_shared<const std::map<std::string, Val>>());
    return OracleResult{std::get<double>(v), ev.weight_, ev.used_};
  } catch (const Undefined&) {
    return std::nullopt;
  }
}

}  // namespace

std::optional<OracleResult> oracle_eval(const Term& t, double weight0, const Trace& trace,
                                        std::uint64_t fuel) {
  std::size_t pos = 0;
  auto r = run(t, weight0, [&]() -> double {
    if (pos == trace.size()) throw Undefined{};
    return trace[pos++];
  }, fuel);
  if (r && pos != trace.size()) return std::nullopt;
  return r;
}

std::optional<OracleResult> oracle_eval_lazy(const Term& t, double weight0,
                                             const std::function<double()>& draw,
                                             std::uint64_t fuel) {
  return run(t, weight0, draw, fuel);
}

}  // namespace pcfss::testkit
