#include "pcfss/goi/exponential.hpp"

#include <boost/multiprecision/integer.hpp>

namespace pcfss::goi {

Nat cantor_pair(const Nat& n, const Nat& m) {
  Nat s = n + m;
  return n + s * (s + 1) / 2;
}

std::pair<Nat, Nat> cantor_unpair(const Nat& k) {
  // s = floor((sqrt(8k+1) - 1) / 2) is the diagonal holding k.
  Nat root = boost::multiprecision::sqrt(Nat(8 * k + 1));
  Nat s = (root - 1) / 2;
  Nat n = k - s * (s + 1) / 2;
  return {n, s - n};
}

MachinePtr dereliction(Shape x) {
  return make_wire("d", Shape::bang(x), x, [](const Signal& in, Run&) -> std::optional<Signal> {
    if (in.end == End::Dom) {
      if (in.tok.kind() != Token::Kind::Idx) return std::nullopt;
      return Signal{End::Cod, in.tok.sub()};
    }
    return Signal{End::Dom, Token::idx(0, in.tok)};
  });
}

MachinePtr digging(Shape x) {
  return make_wire("dg", Shape::bang(x), Shape::bang(Shape::bang(x)),
                   [](const Signal& in, Run& run) -> std::optional<Signal> {
                     if (in.tok.kind() != Token::Kind::Idx) return std::nullopt;
                     if (in.end == End::Dom) {
                       auto [n, m] = cantor_unpair(in.tok.index());
                       return Signal{End::Cod,
                                     Token::idx(std::move(n), Token::idx(std::move(m), in.tok.sub()))};
                     }
                     const Token& inner = in.tok.sub();
                     if (inner.kind() != Token::Kind::Idx) return std::nullopt;
                     Nat k = cantor_pair(in.tok.index(), inner.index());
                     if (boost::multiprecision::msb(k + 1) >= run.limits().max_index_bits) {
                       run.fail(Failure::FuelExhausted);
                       return std::nullopt;
                     }
                     return Signal{End::Dom, Token::idx(std::move(k), inner.sub())};
                   });
}

MachinePtr contraction(Shape x) {
  Shape bx = Shape::bang(x);
  return make_wire("c", bx, Shape::tensor(bx, bx),
                   [](const Signal& in, Run&) -> std::optional<Signal> {
                     if (in.end == End::Dom) {
                       if (in.tok.kind() != Token::Kind::Idx) return std::nullopt;
                       const Nat& k = in.tok.index();
                       int branch = static_cast<int>(k & 1);
                       return Signal{End::Cod, at_factor(Polarity::Pos, branch,
                                                         Token::idx(k >> 1, in.tok.sub()))};
                     }
                     auto f = factor_of(Polarity::Neg, in.tok);
                     if (!f || f->second.kind() != Token::Kind::Idx) return std::nullopt;
                     Nat k = (f->second.index() << 1) + f->first;
                     return Signal{End::Dom, Token::idx(std::move(k), f->second.sub())};
                   });
}

MachinePtr weakening(Shape x) {
  return make_wire("w", Shape::bang(x), Shape::I(),
                   [](const Signal&, Run&) -> std::optional<Signal> { return std::nullopt; });
}

}  // namespace pcfss::goi
