#include "pcfss/goi/wires.hpp"

#include <map>
#include <stdexcept>

namespace pcfss::goi {

MachinePtr identity(Shape x) {
  return make_wire("id", x, x, [](const Signal& in, Run&) -> std::optional<Signal> {
    return Signal{in.end == End::Dom ? End::Cod : End::Dom, in.tok};
  });
}

MachinePtr unit_link(Shape x) {
  return make_wire("unit", Shape::I(), Shape::tensor(x, Shape::dual(x)),
                   [](const Signal& in, Run&) -> std::optional<Signal> {
                     if (in.end != End::Cod) return std::nullopt;
                     auto f = factor_of(Polarity::Neg, in.tok);
                     if (!f) return std::nullopt;
                     return Signal{End::Cod, at_factor(Polarity::Pos, 1 - f->first, f->second)};
                   });
}

MachinePtr counit_link(Shape x) {
  return make_wire("counit", Shape::tensor(Shape::dual(x), x), Shape::I(),
                   [](const Signal& in, Run&) -> std::optional<Signal> {
                     if (in.end != End::Dom) return std::nullopt;
                     auto f = factor_of(Polarity::Pos, in.tok);
                     if (!f) return std::nullopt;
                     return Signal{End::Dom, at_factor(Polarity::Neg, 1 - f->first, f->second)};
                   });
}

MachinePtr symmetry(Shape x, Shape y) {
  return make_wire("sym", Shape::tensor(x, y), Shape::tensor(y, x),
                   [](const Signal& in, Run&) -> std::optional<Signal> {
                     Polarity p = in.end == End::Dom ? Polarity::Pos : Polarity::Neg;
                     auto f = factor_of(p, in.tok);
                     if (!f) return std::nullopt;
                     End out = in.end == End::Dom ? End::Cod : End::Dom;
                     return Signal{out, at_factor(p, 1 - f->first, f->second)};
                   });
}

struct Wiring::Node {
  enum class Kind { Leaf, Unit, Pair } kind;
  int id = -1;
  std::optional<Shape> shape;
  Wiring a, b;
};

Wiring Wiring::leaf(int id, Shape s) {
  Wiring w;
  w.node = std::make_shared<const Node>(Node{Node::Kind::Leaf, id, std::move(s), {}, {}});
  return w;
}

Wiring Wiring::unit() {
  Wiring w;
  w.node = std::make_shared<const Node>(Node{Node::Kind::Unit, -1, {}, {}, {}});
  return w;
}

Wiring Wiring::pair(Wiring a, Wiring b) {
  Wiring w;
  w.node = std::make_shared<const Node>(Node{Node::Kind::Pair, -1, {}, std::move(a), std::move(b)});
  return w;
}

Shape Wiring::shape() const {
  switch (node->kind) {
    case Node::Kind::Leaf: return *node->shape;
    case Node::Kind::Unit: return Shape::I();
    case Node::Kind::Pair: return Shape::tensor(node->a.shape(), node->b.shape());
  }
  return Shape::I();
}

namespace {

struct LeafInfo {
  std::vector<int> path;
  Shape shape;
};

void index_leaves(const Wiring& w, std::vector<int>& path, std::map<int, LeafInfo>& out) {
  using K = Wiring::Node::Kind;
  switch (w.node->kind) {
    case K::Leaf:
      if (!out.emplace(w.node->id, LeafInfo{path, *w.node->shape}).second)
        throw std::invalid_argument("rewire: duplicate leaf id");
      return;
    case K::Unit: return;
    case K::Pair:
      path.push_back(0);
      index_leaves(w.node->a, path, out);
      path.back() = 1;
      index_leaves(w.node->b, path, out);
      path.pop_back();
      return;
  }
}

// Follows the token down to a leaf; returns the leaf id and payload.
std::optional<std::pair<int, Token>> descend(const Wiring& w, Polarity p, Token t) {
  using K = Wiring::Node::Kind;
  const Wiring* cur = &w;
  for (;;) {
    switch (cur->node->kind) {
      case K::Leaf: return std::make_pair(cur->node->id, std::move(t));
      case K::Unit: return std::nullopt;
      case K::Pair: {
        auto f = factor_of(p, t);
        if (!f) return std::nullopt;
        cur = f->first == 0 ? &cur->node->a : &cur->node->b;
        t = std::move(f->second);
        break;
      }
    }
  }
}

Token ascend(const std::vector<int>& path, Polarity p, Token t) {
  for (auto it = path.rbegin(); it != path.rend(); ++it) t = at_factor(p, *it, std::move(t));
  return t;
}

}  // namespace

MachinePtr rewire(const Wiring& from, const Wiring& to, std::string label) {
  auto src = std::make_shared<std::map<int, LeafInfo>>();
  auto dst = std::make_shared<std::map<int, LeafInfo>>();
  std::vector<int> path;
  index_leaves(from, path, *src);
  index_leaves(to, path, *dst);
  for (const auto& [id, info] : *src) {
    auto it = dst->find(id);
    if (it == dst->end()) {
      if (!info.shape.is_void()) throw std::invalid_argument("rewire: leaf lost");
    } else if (!(it->second.shape == info.shape)) {
      throw std::invalid_argument("rewire: leaf shape changed from " + info.shape.str() + " to " +
                                  it->second.shape.str());
    }
  }
  for (const auto& [id, info] : *dst)
    if (!src->count(id) && !info.shape.is_void()) throw std::invalid_argument("rewire: leaf made up");
  return make_wire(std::move(label), from.shape(), to.shape(),
                   [from, to, src, dst](const Signal& in, Run&) -> std::optional<Signal> {
                     bool fwd = in.end == End::Dom;
                     Polarity p = fwd ? Polarity::Pos : Polarity::Neg;
                     auto hit = descend(fwd ? from : to, p, in.tok);
                     if (!hit) return std::nullopt;
                     const auto& table = fwd ? *dst : *src;
                     auto it = table.find(hit->first);
                     if (it == table.end()) return std::nullopt;
                     return Signal{fwd ? End::Cod : End::Dom,
                                   ascend(it->second.path, p, std::move(hit->second))};
                   });
}

MachinePtr lunit_in(Shape x) {
  return rewire(Wiring::leaf(0, x), Wiring::pair(Wiring::unit(), Wiring::leaf(0, x)), "lunit");
}

MachinePtr lunit_out(Shape x) {
  return rewire(Wiring::pair(Wiring::unit(), Wiring::leaf(0, x)), Wiring::leaf(0, x), "lunit");
}

MachinePtr runit_in(Shape x) {
  return rewire(Wiring::leaf(0, x), Wiring::pair(Wiring::leaf(0, x), Wiring::unit()), "runit");
}

MachinePtr runit_out(Shape x) {
  return rewire(Wiring::pair(Wiring::leaf(0, x), Wiring::unit()), Wiring::leaf(0, x), "runit");
}

MachinePtr assoc_right(Shape x, Shape y, Shape z) {
  auto a = Wiring::leaf(0, x), b = Wiring::leaf(1, y), c = Wiring::leaf(2, z);
  return rewire(Wiring::pair(Wiring::pair(a, b), c), Wiring::pair(a, Wiring::pair(b, c)), "assoc");
}

MachinePtr assoc_left(Shape x, Shape y, Shape z) {
  auto a = Wiring::leaf(0, x), b = Wiring::leaf(1, y), c = Wiring::leaf(2, z);
  return rewire(Wiring::pair(a, Wiring::pair(b, c)), Wiring::pair(Wiring::pair(a, b), c), "assoc");
}

MachinePtr bang_split(Shape x, Shape y) {
  return make_wire("split", Shape::bang(Shape::tensor(x, y)),
                   Shape::tensor(Shape::bang(x), Shape::bang(y)),
                   [](const Signal& in, Run&) -> std::optional<Signal> {
                     if (in.end == End::Dom) {
                       if (in.tok.kind() != Token::Kind::Idx) return std::nullopt;
                       auto f = factor_of(Polarity::Pos, in.tok.sub());
                       if (!f) return std::nullopt;
                       return Signal{End::Cod,
                                     at_factor(Polarity::Pos, f->first,
                                               Token::idx(in.tok.index(), f->second))};
                     }
                     auto f = factor_of(Polarity::Neg, in.tok);
                     if (!f || f->second.kind() != Token::Kind::Idx) return std::nullopt;
                     return Signal{End::Dom,
                                   Token::idx(f->second.index(),
                                              at_factor(Polarity::Neg, f->first, f->second.sub()))};
                   });
}

MachinePtr bang_join(Shape x, Shape y) {
  return make_wire("join", Shape::tensor(Shape::bang(x), Shape::bang(y)),
                   Shape::bang(Shape::tensor(x, y)),
                   [](const Signal& in, Run&) -> std::optional<Signal> {
                     if (in.end == End::Dom) {
                       auto f = factor_of(Polarity::Pos, in.tok);
                       if (!f || f->second.kind() != Token::Kind::Idx) return std::nullopt;
                       return Signal{End::Cod,
                                     Token::idx(f->second.index(),
                                                at_factor(Polarity::Pos, f->first, f->second.sub()))};
                     }
                     if (in.tok.kind() != Token::Kind::Idx) return std::nullopt;
                     auto f = factor_of(Polarity::Neg, in.tok.sub());
                     if (!f) return std::nullopt;
                     return Signal{End::Dom, at_factor(Polarity::Neg, f->first,
                                                       Token::idx(in.tok.index(), f->second))};
                   });
}

}  // namespace pcfss::goi
