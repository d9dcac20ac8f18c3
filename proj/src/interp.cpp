#include "pcfss/interp.hpp"

#include "pcfss/goi/exponential.hpp"
#include "pcfss/goi/fixpoint.hpp"
#include "pcfss/goi/prim_machines.hpp"
#include "pcfss/goi/wires.hpp"

namespace pcfss {

using goi::MachinePtr;
using goi::Shape;
using W = goi::Wiring;

Shape type_shape(const Type& t) {
  switch (t.kind()) {
    case Type::Kind::Unit: return Shape::I();
    case Type::Kind::Real: return Shape::R();
    case Type::Kind::Arrow:
      return Shape::tensor(Shape::S(),
                           Shape::tensor(Shape::bang(type_shape(t.codomain())),
                                         Shape::dual(Shape::bang(type_shape(t.domain())))));
  }
  throw std::logic_error("type_shape: unknown type");
}

namespace {

Shape shape_of_entries(const std::vector<Context::Entry>& es, std::size_t n) {
  if (n == 0) return Shape::I();
  Shape s = type_shape(es[0].type);
  for (std::size_t i = 1; i < n; ++i) s = Shape::tensor(s, type_shape(es[i].type));
  return s;
}

}  // namespace

Shape context_shape(const Context& ctx) { return shape_of_entries(ctx.entries(), ctx.size()); }

namespace {

class Compiler {
 public:
  explicit Compiler(const InterpOptions& opt) : opt_(opt), prims_(*opt.prims) {}

  MachinePtr term(const Context& ctx, const Term& t) {
    Type a = infer_type(ctx, t, prims_);
    MachinePtr m = term_raw(ctx, t);
    expect(m, Shape::bang(context_shape(ctx)),
           Shape::tensor(Shape::S(), Shape::bang(type_shape(a))), "term");
    return m;
  }

  MachinePtr value(const Context& ctx, const Value& v) {
    Type a = infer_value_type(ctx, v, prims_);
    MachinePtr m = value_raw(ctx, v, a);
    expect(m, Shape::bang(context_shape(ctx)), type_shape(a), "value");
    return m;
  }

 private:
  static void expect(const MachinePtr& m, const Shape& dom, const Shape& cod, const char* what) {
    if (!(m->dom() == dom) || !(m->cod() == cod))
      throw InterpError(std::string("compiled ") + what + " has interface " + m->dom().str() +
                        " -o " + m->cod().str() + ", expected " + dom.str() + " -o " + cod.str());
  }

  // !D (x) !A -o !(D, x:A).  An empty context contributes the void !I.
  static MachinePtr join(const Context& ctx, const Shape& a) {
    Shape d = context_shape(ctx);
    if (ctx.empty())
      return goi::rewire(W::pair(W::leaf(0, Shape::bang(d)), W::leaf(1, Shape::bang(a))),
                         W::leaf(1, Shape::bang(a)), "join");
    return goi::bang_join(d, a);
  }

  // Projection of entry i out of !D.
  static MachinePtr var_at(const std::vector<Context::Entry>& es, std::size_t n, std::size_t i) {
    Shape b = type_shape(es[n - 1].type);
    if (n == 1) return goi::dereliction(b);
    Shape d = shape_of_entries(es, n - 1);
    MachinePtr split = goi::bang_split(d, b);
    if (i == n - 1)
      return goi::chain({split, goi::tensor(goi::weakening(d), goi::dereliction(b)),
                         goi::lunit_out(b)});
    Shape a = type_shape(es[i].type);
    return goi::chain({split, goi::tensor(var_at(es, n - 1, i), goi::weakening(b)),
                       goi::runit_out(a)});
  }

  MachinePtr value_raw(const Context& ctx, const Value& v, const Type& a) {
    Shape d = context_shape(ctx);
    Shape bd = Shape::bang(d);
    switch (v.kind()) {
      case Value::Kind::Skip: return goi::weakening(d);
      case Value::Kind::Real:
        return goi::chain({goi::runit_in(bd), goi::tensor(goi::weakening(d), goi::real_const(v.real())),
                           goi::lunit_out(Shape::R())});
      case Value::Kind::Var: {
        auto i = ctx.lookup(v.name());
        if (!i) throw InterpError("unbound variable " + v.name());
        return var_at(ctx.entries(), ctx.size(), *i);
      }
      case Value::Kind::Lam: return lambda(ctx, v.name(), v.type(), v.body(), a);
      case Value::Kind::Fix: {
        Context inner = ctx.extend(v.name(), a);
        Shape c = type_shape(a);
        MachinePtr body = lambda(inner, v.param(), v.type(), v.body(), a);
        MachinePtr g = goi::compose(join(ctx, c), body);
        MachinePtr fixed = opt_.iterants ? goi::iterants_in_context(g, d, c, *opt_.iterants)
                                         : goi::dagger_in_context(g, d, c);
        return goi::group("fix " + v.name(), fixed, false);
      }
    }
    throw std::logic_error("interp_value: unknown value");
  }

  MachinePtr lambda(const Context& ctx, const std::string& x, const Type& arg, const Term& body,
                    const Type& fn_type) {
    Shape d = context_shape(ctx);
    Shape bd = Shape::bang(d);
    Shape ba = Shape::bang(type_shape(arg));
    Shape ba_perp = Shape::dual(ba);
    Shape bb = Shape::bang(type_shape(fn_type.codomain()));
    Context inner = ctx.extend(x, arg);
    MachinePtr m = term(inner, body);
    return goi::group(
        "lam " + x,
        goi::chain({
            goi::runit_in(bd),
            goi::tensor(goi::identity(bd), goi::unit_link(ba)),
            goi::rewire(W::pair(W::leaf(0, bd), W::pair(W::leaf(1, ba), W::leaf(2, ba_perp))),
                        W::pair(W::pair(W::leaf(0, bd), W::leaf(1, ba)), W::leaf(2, ba_perp))),
            goi::tensor(goi::compose(join(ctx, type_shape(arg)), m), goi::identity(ba_perp)),
            goi::rewire(W::pair(W::pair(W::leaf(0, Shape::S()), W::leaf(1, bb)), W::leaf(2, ba_perp)),
                        W::pair(W::leaf(0, Shape::S()), W::pair(W::leaf(1, bb), W::leaf(2, ba_perp)))),
        }),
        false);
  }

  // The value V as a term: e (x) (dg ; !V).
  MachinePtr returned(const Context& ctx, MachinePtr psi) {
    Shape d = context_shape(ctx);
    return goi::chain({goi::lunit_in(Shape::bang(d)),
                       goi::tensor(goi::state_unit(),
                                   goi::compose(goi::digging(d), goi::bang(std::move(psi))))});
  }

  MachinePtr term_raw(const Context& ctx, const Term& t) {
    Shape d = context_shape(ctx);
    Shape bd = Shape::bang(d);
    Shape s = Shape::S();
    switch (t.kind()) {
      case Term::Kind::Val: return returned(ctx, value(ctx, t.value()));

      case Term::Kind::App: {
        Type fn_type = infer_value_type(ctx, t.value(), prims_);
        Shape ba = Shape::bang(type_shape(fn_type.domain()));
        Shape ba_perp = Shape::dual(ba);
        Shape bb = Shape::bang(type_shape(fn_type.codomain()));
        MachinePtr f = value(ctx, t.value());
        MachinePtr arg = goi::compose(goi::digging(d), goi::bang(value(ctx, t.arg())));
        return goi::group(
            "app",
            goi::chain({
                goi::contraction(d),
                goi::tensor(f, arg),
                goi::rewire(W::pair(W::pair(W::leaf(0, s), W::pair(W::leaf(1, bb), W::leaf(2, ba_perp))),
                                    W::leaf(3, ba)),
                            W::pair(W::leaf(0, s), W::pair(W::leaf(1, bb),
                                                           W::pair(W::leaf(2, ba_perp), W::leaf(3, ba))))),
                goi::tensor(goi::identity(s),
                            goi::tensor(goi::identity(bb), goi::counit_link(ba))),
                goi::rewire(W::pair(W::leaf(0, s), W::pair(W::leaf(1, bb), W::unit())),
                            W::pair(W::leaf(0, s), W::leaf(1, bb))),
            }),
            false);
      }

      case Term::Kind::Let: {
        Type a = infer_type(ctx, t.bound(), prims_);
        Shape ba = Shape::bang(type_shape(a));
        Context inner = ctx.extend(t.var(), a);
        Type b = infer_type(inner, t.body(), prims_);
        Shape bb = Shape::bang(type_shape(b));
        MachinePtr m = term(ctx, t.bound());
        MachinePtr n = goi::compose(join(ctx, type_shape(a)), term(inner, t.body()));
        return goi::group(
            "let " + t.var(),
            goi::chain({
                goi::contraction(d),
                goi::tensor(goi::identity(bd), m),
                goi::rewire(W::pair(W::leaf(0, bd), W::pair(W::leaf(1, s), W::leaf(2, ba))),
                            W::pair(W::leaf(1, s), W::pair(W::leaf(0, bd), W::leaf(2, ba)))),
                goi::tensor(goi::identity(s), n),
                goi::rewire(W::pair(W::leaf(0, s), W::pair(W::leaf(1, s), W::leaf(2, bb))),
                            W::pair(W::pair(W::leaf(1, s), W::leaf(0, s)), W::leaf(2, bb))),
                goi::tensor(goi::state_mult(), goi::identity(bb)),
            }),
            false);
      }

      case Term::Kind::If: {
        Type a = infer_type(ctx, t, prims_);
        Shape x = Shape::tensor(s, Shape::bang(type_shape(a)));
        MachinePtr branches = goi::compose(
            goi::contraction(d), goi::tensor(term(ctx, t.then_branch()), term(ctx, t.else_branch())));
        return goi::group("if",
                          goi::chain({goi::contraction(d),
                                      goi::tensor(value(ctx, t.value()), branches), goi::cond(x)}),
                          false);
      }

      case Term::Kind::Prim: {
        const auto& args = t.args();
        if (args.empty()) throw InterpError("nullary primitives are not supported");
        MachinePtr body = value(ctx, args.back());
        for (std::size_t i = args.size() - 1; i-- > 0;)
          body = goi::compose(goi::contraction(d), goi::tensor(value(ctx, args[i]), body));
        body = goi::compose(body, goi::fn_machine(t.prim_id(), prims_));
        return goi::group(prims_.at(t.prim_id()).name, returned(ctx, body), false);
      }

      case Term::Kind::Sample: {
        MachinePtr sa = opt_.sample_from_source ? goi::sample_machine_rng() : goi::sample_machine();
        Shape out = Shape::tensor(s, Shape::bang(Shape::R()));
        return goi::chain({goi::runit_in(bd), goi::tensor(goi::weakening(d), sa),
                           goi::lunit_out(out)});
      }

      case Term::Kind::Score: {
        Shape unit = Shape::bang(Shape::I());
        return goi::chain({value(ctx, t.value()), goi::score_machine(),
                           goi::rewire(W::leaf(0, s), W::pair(W::leaf(0, s), W::leaf(1, unit)))});
      }
    }
    throw std::logic_error("interp_term: unknown term");
  }

  const InterpOptions& opt_;
  const PrimRegistry& prims_;
};

}  // namespace

MachinePtr interp_term(const Context& ctx, const Term& t, const InterpOptions& opt) {
  return Compiler(opt).term(ctx, t);
}

MachinePtr interp_value(const Context& ctx, const Value& v, const InterpOptions& opt) {
  return Compiler(opt).value(ctx, v);
}

}  // namespace pcfss
