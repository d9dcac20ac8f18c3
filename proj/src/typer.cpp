#include "pcfss/typer.hpp"

#include "pcfss/parse.hpp"

namespace pcfss {

Context Context::extend(const std::string& name, const Type& t) const {
  Context c = *this;
  for (auto& e : c.entries_)
    if (e.name == name) e.name = "#" + name + "@" + std::to_string(c.entries_.size());
  c.entries_.push_back({name, t});
  return c;
}

std::optional<std::size_t> Context::lookup(const std::string& name) const {
  for (std::size_t i = entries_.size(); i-- > 0;)
    if (entries_[i].name == name) return i;
  return std::nullopt;
}

Context Context::prefix() const {
  Context c = *this;
  if (!c.entries_.empty()) c.entries_.pop_back();
  return c;
}

TypeError::TypeError(Kind kind, SourcePos pos, const std::string& msg)
    : std::runtime_error(std::to_string(pos.line) + ":" + std::to_string(pos.col) + ": " + msg),
      kind_(kind),
      pos_(pos),
      detail_(msg) {}

namespace {

class Typer {
 public:
  explicit Typer(const PrimRegistry& prims) : prims_(prims) {}

  Type term(const Context& ctx, const Term& t) {
    switch (t.kind()) {
      case Term::Kind::Val: return value(ctx, t.value());
      case Term::Kind::App: {
        Type f = value(ctx, t.value());
        if (!f.is_arrow())
          throw mismatch(t.pos(), "applied value", "a function type", f, print_value(t.value()));
        Type a = value(ctx, t.arg());
        if (!(a == f.domain()))
          throw mismatch(t.arg().pos(), "function argument", f.domain().str(), a,
                         print_value(t.arg()));
        return f.codomain();
      }
      case Term::Kind::Let: {
        Type b = term(ctx, t.bound());
        return term(ctx.extend(t.var(), b), t.body());
      }
      case Term::Kind::If: {
        Type g = value(ctx, t.value());
        if (!(g == Type::real()))
          throw mismatch(t.value().pos(), "if guard", "Real", g, print_value(t.value()));
        Type m = term(ctx, t.then_branch());
        Type n = term(ctx, t.else_branch());
        if (!(m == n))
          throw TypeError(TypeError::Kind::TypeMismatch, t.else_branch().pos(),
                          "branches disagree: then-branch has type " + m.str() +
                              ", else-branch has type " + n.str());
        return m;
      }
      case Term::Kind::Prim: {
        const PrimInfo& info = prims_.at(t.prim_id());
        if (t.args().size() != info.arity)
          throw TypeError(TypeError::Kind::ArityMismatch, t.pos(),
                          "primitive '" + info.name + "' takes " + std::to_string(info.arity) +
                              " argument(s), got " + std::to_string(t.args().size()));
        for (const auto& a : t.args()) {
          Type ta = value(ctx, a);
          if (!(ta == Type::real()))
            throw mismatch(a.pos(), "argument of '" + info.name + "'", "Real", ta,
                           print_value(a));
        }
        return Type::real();
      }
      case Term::Kind::Sample: return Type::real();
      case Term::Kind::Score: {
        Type a = value(ctx, t.value());
        if (!(a == Type::real()))
          throw mismatch(t.value().pos(), "score argument", "Real", a, print_value(t.value()));
        return Type::unit();
      }
    }
    return Type::unit();
  }

  Type value(const Context& ctx, const Value& v) {
    switch (v.kind()) {
      case Value::Kind::Skip: return Type::unit();
      case Value::Kind::Real: return Type::real();
      case Value::Kind::Var: {
        auto i = ctx.lookup(v.name());
        if (!i)
          throw TypeError(TypeError::Kind::UnboundVariable, v.pos(),
                          "unbound variable '" + v.name() + "'");
        return ctx.entries()[*i].type;
      }
      case Value::Kind::Lam: {
        Type b = term(ctx.extend(v.name(), v.type()), v.body());
        return Type::arrow(v.type(), b);
      }
      case Value::Kind::Fix: {
        Type c = Type::arrow(v.type(), v.result_type());
        Context inner = ctx.extend(v.name(), c).extend(v.param(), v.type());
        Type b = term(inner, v.body());
        if (!(b == v.result_type()))
          throw TypeError(TypeError::Kind::TypeMismatch, v.body().pos(),
                          "fix body has type " + b.str() + " but the annotation says " +
                              v.result_type().str());
        return c;
      }
    }
    return Type::unit();
  }

 private:
  static TypeError mismatch(SourcePos p, const std::string& what, const std::string& expected,
                            const Type& got, const std::string& subterm) {
    return TypeError(TypeError::Kind::TypeMismatch, p,
                     what + " '" + subterm + "' has type " + got.str() + ", expected " +
                         expected);
  }

  const PrimRegistry& prims_;
};

}  // namespace

Type infer_type(const Context& ctx, const Term& t, const PrimRegistry& prims) {
  return Typer(prims).term(ctx, t);
}

Type infer_value_type(const Context& ctx, const Value& v, const PrimRegistry& prims) {
  return Typer(prims).value(ctx, v);
}

void check_closed_real(const Term& t, const PrimRegistry& prims) {
  Type a = infer_type(Context{}, t, prims);
  if (!(a == Type::real()))
    throw TypeError(TypeError::Kind::NotGroundReal, t.pos(),
                    "program has type " + a.str() + ", expected Real");
}

}  // namespace pcfss
