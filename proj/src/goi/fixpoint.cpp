#include "pcfss/goi/fixpoint.hpp"

#include <stdexcept>

#include "pcfss/goi/exponential.hpp"
#include "pcfss/goi/wires.hpp"

namespace pcfss::goi {

namespace {

using W = Wiring;

// Feedback over !X: body : A (x) !X -o B (x) !X gives A -o B.
MachinePtr trace_bang(MachinePtr body, Shape a, Shape b, Shape x) {
  Shape bx = Shape::bang(x);
  Shape bx_perp = Shape::dual(bx);
  MachinePtr open = compose(runit_in(a), tensor(identity(a), unit_link(bx)));
  MachinePtr regroup_in = rewire(W::pair(W::leaf(0, a), W::pair(W::leaf(1, bx), W::leaf(2, bx_perp))),
                                 W::pair(W::pair(W::leaf(0, a), W::leaf(1, bx)), W::leaf(2, bx_perp)));
  MachinePtr regroup_out = rewire(W::pair(W::pair(W::leaf(0, b), W::leaf(1, bx)), W::leaf(2, bx_perp)),
                                  W::pair(W::leaf(0, b), W::pair(W::leaf(1, bx), W::leaf(2, bx_perp))));
  MachinePtr close = compose(tensor(identity(b), counit_link(bx_perp)), runit_out(b));
  return chain({open, regroup_in, tensor(body, identity(bx_perp)), regroup_out, close});
}

Shape bang_target(const MachinePtr& m) {
  if (m->dom().kind() != Shape::Kind::Bang || !(m->dom().inner() == m->cod()))
    throw std::invalid_argument("expected a machine !X -o X, got " + m->dom().str() + " -o " +
                                m->cod().str());
  return m->cod();
}

}  // namespace

MachinePtr dagger(MachinePtr m) {
  Shape x = bang_target(m);
  Shape bx = Shape::bang(x);
  MachinePtr body = chain({lunit_out(bx), digging(x), bang(m), contraction(x),
                           tensor(m, identity(bx))});
  return group("dagger", trace_bang(body, Shape::I(), x, x), false);
}

MachinePtr iterants(MachinePtr m, unsigned k) {
  Shape x = bang_target(m);
  Shape bang_unit = Shape::bang(Shape::I());
  MachinePtr it = bottom(Shape::I(), x);
  MachinePtr to_bang_unit = rewire(W::unit(), W::leaf(0, bang_unit));
  for (unsigned i = 0; i < k; ++i) it = chain({to_bang_unit, bang(it), m});
  return group("iter" + std::to_string(k), it, false);
}

MachinePtr dagger_in_context(MachinePtr g, Shape d, Shape x) {
  Shape bd = Shape::bang(d), bx = Shape::bang(x);
  if (!(g->dom() == Shape::tensor(bd, bx)) || !(g->cod() == x))
    throw std::invalid_argument("dagger_in_context: bad shape " + g->dom().str() + " -o " +
                                g->cod().str());
  MachinePtr copies = chain({tensor(digging(d), digging(x)), bang_join(Shape::bang(d), bx), bang(g),
                             contraction(x)});
  MachinePtr body = chain({
      tensor(contraction(d), identity(bx)),
      rewire(W::pair(W::pair(W::leaf(0, bd), W::leaf(1, bd)), W::leaf(2, bx)),
             W::pair(W::leaf(0, bd), W::pair(W::leaf(1, bd), W::leaf(2, bx)))),
      tensor(identity(bd), copies),
      rewire(W::pair(W::leaf(0, bd), W::pair(W::leaf(1, bx), W::leaf(2, bx))),
             W::pair(W::pair(W::leaf(0, bd), W::leaf(1, bx)), W::leaf(2, bx))),
      tensor(g, identity(bx)),
  });
  return group("dagger", trace_bang(body, bd, x, x), false);
}

MachinePtr iterants_in_context(MachinePtr g, Shape d, Shape x, unsigned k) {
  Shape bd = Shape::bang(d);
  MachinePtr it = bottom(bd, x);
  for (unsigned i = 0; i < k; ++i)
    it = chain({contraction(d), tensor(identity(bd), compose(digging(d), bang(it))), g});
  return group("iter" + std::to_string(k), it, false);
}

}  // namespace pcfss::goi
