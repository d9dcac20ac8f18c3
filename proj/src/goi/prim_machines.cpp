#include "pcfss/goi/prim_machines.hpp"

#include <cmath>
#include <stdexcept>

#include "pcfss/goi/codec.hpp"
#include "pcfss/goi/wires.hpp"
#include "pcfss/parse.hpp"

namespace pcfss::goi {

MachinePtr real_const(double a) {
  return make_wire("r_" + format_real(a), Shape::I(), Shape::R(),
                   [a](const Signal& in, Run&) -> std::optional<Signal> {
                     if (in.end != End::Cod || in.tok.kind() != Token::Kind::Seq) return std::nullopt;
                     std::vector<double> s;
                     s.reserve(in.tok.reals().size() + 1);
                     s.push_back(a);
                     s.insert(s.end(), in.tok.reals().begin(), in.tok.reals().end());
                     return Signal{End::Cod, Token::seq(std::move(s))};
                   });
}

namespace {

Shape reals_power(std::size_t n) {
  Shape s = Shape::R();
  for (std::size_t i = 1; i < n; ++i) s = Shape::tensor(Shape::R(), s);
  return s;
}

// Argument k of a right-nested n-fold tensor.
Token arg_token(Polarity p, std::size_t k, std::size_t n, Token t) {
  if (n == 1) return t;
  if (k == 0) return at_factor(p, 0, std::move(t));
  return at_factor(p, 1, arg_token(p, k - 1, n - 1, std::move(t)));
}

std::optional<std::pair<std::size_t, Token>> which_arg(Polarity p, std::size_t n, Token t) {
  std::size_t k = 0;
  while (n > 1) {
    auto f = factor_of(p, t);
    if (!f) return std::nullopt;
    if (f->first == 0) return std::make_pair(k, std::move(f->second));
    t = std::move(f->second);
    ++k;
    --n;
  }
  return std::make_pair(k, std::move(t));
}

}  // namespace

MachinePtr fn_machine(PrimId fid, const PrimRegistry& prims) {
  const PrimInfo& info = prims.at(fid);
  std::size_t n = info.arity;
  auto fn = info.fn;
  return make_wire("fn:" + info.name, reals_power(n), Shape::R(),
                   [n, fn](const Signal& in, Run&) -> std::optional<Signal> {
                     if (in.end == End::Cod) {
                       if (in.tok.kind() != Token::Kind::Seq) return std::nullopt;
                       return Signal{End::Dom, arg_token(Polarity::Neg, 0, n, in.tok)};
                     }
                     auto hit = which_arg(Polarity::Pos, n, in.tok);
                     if (!hit || hit->second.kind() != Token::Kind::Seq) return std::nullopt;
                     auto [k, tok] = std::move(*hit);
                     if (k + 1 < n) return Signal{End::Dom, arg_token(Polarity::Neg, k + 1, n, tok)};
                     const auto& s = tok.reals();
                     if (s.size() < n) return std::nullopt;
                     std::vector<double> args(n);
                     for (std::size_t i = 0; i < n; ++i) args[i] = s[n - 1 - i];
                     std::vector<double> out;
                     out.reserve(s.size() - n + 1);
                     out.push_back(fn(args));
                     out.insert(out.end(), s.begin() + static_cast<std::ptrdiff_t>(n), s.end());
                     return Signal{End::Cod, Token::seq(std::move(out))};
                   });
}

MachinePtr cond(Shape x) {
  Shape dom = Shape::tensor(Shape::R(), Shape::tensor(x, x));
  return make_wire("cd", dom, x, [x](const Signal& in, Run&) -> std::optional<Signal> {
    if (in.end == End::Cod) {
      std::vector<double> code;
      encode_token(in.tok, code);
      return Signal{End::Dom, at_factor(Polarity::Neg, 0, Token::seq(std::move(code)))};
    }
    auto f = factor_of(Polarity::Pos, in.tok);
    if (!f) return std::nullopt;
    if (f->first == 1) {
      auto g = factor_of(Polarity::Pos, f->second);
      if (!g) return std::nullopt;
      return Signal{End::Cod, std::move(g->second)};
    }
    const Token& answer = f->second;
    if (answer.kind() != Token::Kind::Seq || answer.reals().empty()) return std::nullopt;
    const auto& s = answer.reals();
    auto d = codec_decode(x, std::span<const double>(s).subspan(1));
    auto* ok = std::get_if<Decoded>(&d);
    if (!ok || !ok->rest.empty()) return std::nullopt;
    int branch = s[0] == 0.0 ? 0 : 1;
    return Signal{End::Dom,
                  at_factor(Polarity::Neg, 1, at_factor(Polarity::Neg, branch, std::move(ok->tok)))};
  });
}

namespace {

// Backward S token (a, u) arrives on the S0^perp factor.
std::optional<Token> state_in(const Token& t) {
  auto f = factor_of(Polarity::Neg, t);
  if (!f || f->first != 1 || f->second.kind() != Token::Kind::WTrace) return std::nullopt;
  return f->second;
}

Token state_out(double w, std::vector<double> u) {
  return at_factor(Polarity::Pos, 0, Token::wtrace(w, std::move(u)));
}

bool in_unit_interval(const std::vector<double>& u, std::size_t from) {
  for (std::size_t i = from; i < u.size(); ++i)
    if (!(u[i] >= 0.0 && u[i] <= 1.0)) return false;
  return true;
}

class SampleMachine final : public Machine {
 public:
  explicit SampleMachine(bool from_source)
      : Machine("sa", Shape::I(),
                Shape::tensor(Shape::S(), Shape::bang(Shape::R()))),
        from_source_(from_source) {}

  bool stateless() const override { return false; }

 protected:
  std::optional<Signal> step(const Signal& in, State& s, Run& run) const override {
    if (in.end != End::Cod) return std::nullopt;
    auto f = factor_of(Polarity::Neg, in.tok);
    if (!f) return std::nullopt;
    if (f->first == 0) {
      if (s.cell) return std::nullopt;
      auto st = state_in(f->second);
      if (!st) return std::nullopt;
      std::vector<double> u = st->reals();
      double b;
      if (from_source_) {
        if (!run.source()) return std::nullopt;
        b = run.source()->next();
      } else {
        if (u.empty()) return std::nullopt;
        b = u.front();
        u.erase(u.begin());
      }
      s.cell = b;
      return Signal{End::Cod, at_factor(Polarity::Pos, 0, state_out(st->weight(), std::move(u)))};
    }
    if (!s.cell) return std::nullopt;
    const Token& q = f->second;
    if (q.kind() != Token::Kind::Idx || q.sub().kind() != Token::Kind::Seq) return std::nullopt;
    std::vector<double> v;
    v.reserve(q.sub().reals().size() + 1);
    v.push_back(*s.cell);
    v.insert(v.end(), q.sub().reals().begin(), q.sub().reals().end());
    return Signal{End::Cod, at_factor(Polarity::Pos, 1, Token::idx(q.index(), Token::seq(std::move(v))))};
  }

 private:
  bool from_source_;
};

}  // namespace

MachinePtr score_machine() {
  return make_wire("sc", Shape::R(), Shape::S(), [](const Signal& in, Run&) -> std::optional<Signal> {
    if (in.end == End::Cod) {
      auto st = state_in(in.tok);
      if (!st) return std::nullopt;
      std::vector<double> q;
      q.reserve(st->reals().size() + 1);
      q.push_back(st->weight());
      q.insert(q.end(), st->reals().begin(), st->reals().end());
      return Signal{End::Dom, Token::seq(std::move(q))};
    }
    if (in.tok.kind() != Token::Kind::Seq) return std::nullopt;
    const auto& s = in.tok.reals();
    if (s.size() < 2 || !in_unit_interval(s, 2)) return std::nullopt;
    return Signal{End::Cod, state_out(std::fabs(s[0] * s[1]), std::vector<double>(s.begin() + 2, s.end()))};
  });
}

MachinePtr sample_machine() { return std::make_shared<SampleMachine>(false); }
MachinePtr sample_machine_rng() { return std::make_shared<SampleMachine>(true); }

MachinePtr state_unit() { return group("e", unit_link(Shape::S0())); }

MachinePtr state_mult() {
  using W = Wiring;
  Shape s0 = Shape::S0(), s0p = Shape::dual(Shape::S0());
  auto a = W::leaf(0, s0), b = W::leaf(1, s0p), c = W::leaf(2, s0), d = W::leaf(3, s0p);
  MachinePtr spread = rewire(W::pair(W::pair(a, b), W::pair(c, d)),
                             W::pair(a, W::pair(W::pair(b, c), d)));
  MachinePtr middle = tensor(identity(s0), tensor(counit_link(s0), identity(s0p)));
  MachinePtr gather = rewire(W::pair(a, W::pair(W::unit(), d)), W::pair(a, d));
  return group("m", chain({spread, middle, gather}));
}

}  // namespace pcfss::goi
