#include <doctest.h>

#include <cmath>

#include "generators.hpp"
#include "pcfss/goi/codec.hpp"
#include "pcfss/goi/prim_machines.hpp"
#include "pcfss/goi/probe.hpp"
#include "pcfss/goi/wires.hpp"
#include "pcfss/rng.hpp"

using namespace pcfss;
using namespace pcfss::goi;
using namespace pcfss::testkit;

namespace {

Token seq(std::vector<double> xs) { return Token::seq(std::move(xs)); }
Signal cod(Token t) { return {End::Cod, std::move(t)}; }
Signal dom(Token t) { return {End::Dom, std::move(t)}; }

// S tokens: backward (a, u) on the S0^perp factor, forward on S0.
Token s_in(double a, std::vector<double> u) {
  return at_factor(Polarity::Neg, 1, Token::wtrace(a, std::move(u)));
}
Token s_out(double a, std::vector<double> u) {
  return at_factor(Polarity::Pos, 0, Token::wtrace(a, std::move(u)));
}

std::optional<Signal> step1(const Machine& m, const Signal& in) {
  State s = m.initial();
  Run run;
  return m.transition(in, s, run);
}

PrimId prim(const char* name) { return *builtin_prims().find(name); }

struct FixedSource : UniformSource {
  double v;
  explicit FixedSource(double x) : v(x) {}
  double next() override { return v; }
};

}  // namespace

TEST_SUITE("goi_machines") {
  TEST_CASE("real constants push onto the query") {
    CHECK(*step1(*real_const(5), cod(seq({}))) == cod(seq({5})));
    CHECK(*step1(*real_const(-2), cod(seq({1, 7}))) == cod(seq({-2, 1, 7})));
    CHECK(real_const(5)->label() == "r_5.0");
  }

  TEST_CASE("unary function protocol") {
    MachinePtr f = fn_machine(prim("neg"));
    CHECK(*step1(*f, cod(seq({9}))) == dom(seq({9})));
    CHECK(*step1(*f, dom(seq({3, 9}))) == cod(seq({-3, 9})));
    CHECK_FALSE(step1(*f, dom(seq({}))));
    CHECK(f->label() == "fn:neg");
  }

  TEST_CASE("binary function queries arguments left to right") {
    MachinePtr f = fn_machine(prim("sub"));
    CHECK(*step1(*f, cod(seq({}))) == dom(at_factor(Polarity::Neg, 0, seq({}))));
    CHECK(*step1(*f, dom(at_factor(Polarity::Pos, 0, seq({2})))) ==
          dom(at_factor(Polarity::Neg, 1, seq({2}))));
    CHECK(*step1(*f, dom(at_factor(Polarity::Pos, 1, seq({3, 2})))) == cod(seq({2 - 3})));
    CHECK_FALSE(step1(*f, dom(at_factor(Polarity::Pos, 1, seq({3})))));
    MachinePtr add = compose(tensor(real_const(2), real_const(3)), fn_machine(prim("add")));
    using W = Wiring;
    MachinePtr closed = compose(
        rewire(W::unit(), W::pair(W::unit(), W::unit())), add);
    CHECK(*step1(*closed, cod(seq({}))) == cod(seq({5})));
  }

  TEST_CASE("codec format") {
    CHECK(codec_encode(Shape::R(), seq({1, 2})) == std::vector<double>{0, 2, 1, 2});
    CHECK(codec_encode(Shape::bang(Shape::R()), Token::idx(3, seq({}))) ==
          std::vector<double>{1, 3, 0, 0});
    std::vector<double> bad{99, 1};
    auto d = codec_decode(Shape::R(), bad);
    REQUIRE(std::holds_alternative<CodecError>(d));
    CHECK(std::get<CodecError>(d) == CodecError::UnknownTag);
    std::vector<double> trunc{0, 3, 1};
    CHECK(std::get<CodecError>(codec_decode(Shape::R(), trunc)) == CodecError::Truncated);
    std::vector<double> wrong{1, 3, 0, 0};
    CHECK(std::get<CodecError>(codec_decode(Shape::R(), wrong)) == CodecError::ShapeMismatch);
    CHECK_THROWS(codec_encode(Shape::S0(), Token::wtrace(1, {})));
  }

  TEST_CASE("codec escapes large indices") {
    Nat big = (Nat(1) << 70) + 5;
    Token t = Token::idx(big, seq({}));
    auto code = codec_encode(Shape::bang(Shape::R()), t);
    CHECK(code[1] == -3);
    auto d = codec_decode(Shape::bang(Shape::R()), code);
    REQUIRE(std::holds_alternative<Decoded>(d));
    CHECK(std::get<Decoded>(d).tok == t);
    std::vector<double> noncanonical{1, -2, 5, 0, 0, 0};
    CHECK(std::get<CodecError>(codec_decode(Shape::bang(Shape::R()), noncanonical)) ==
          CodecError::Malformed);
  }

  TEST_CASE("codec round trip is exact and prefix-free") {
    Rng rng(31);
    int tested = 0;
    for (int i = 0; i < 2000 && tested < 1000; ++i) {
      Shape s = random_interp_shape(rng, 3);
      auto t = random_token(rng, s, Polarity::Neg);
      if (!t) continue;
      ++tested;
      auto code = codec_encode(s, *t);
      std::vector<double> rest{0.5, 7};
      code.insert(code.end(), rest.begin(), rest.end());
      auto d = codec_decode(s, code);
      REQUIRE(std::holds_alternative<Decoded>(d));
      CHECK(std::get<Decoded>(d).tok == *t);
      CHECK(std::get<Decoded>(d).rest == rest);
    }
    CHECK(tested == 1000);
  }

  TEST_CASE("cond routes on the guard") {
    Shape x = Shape::R();
    MachinePtr c = cond(x);
    auto q = step1(*c, cod(seq({4})));
    REQUIRE(q);
    CHECK(q->end == End::Dom);
    auto f = factor_of(Polarity::Neg, q->tok);
    REQUIRE(f);
    CHECK(f->first == 0);
    std::vector<double> answer{0};
    auto code = codec_encode(x, seq({4}));
    answer.insert(answer.end(), code.begin(), code.end());
    auto then_q = step1(*c, dom(at_factor(Polarity::Pos, 0, seq(answer))));
    CHECK(*then_q == dom(at_factor(Polarity::Neg, 1, at_factor(Polarity::Neg, 0, seq({4})))));
    answer[0] = 2.5;
    auto else_q = step1(*c, dom(at_factor(Polarity::Pos, 0, seq(answer))));
    CHECK(*else_q == dom(at_factor(Polarity::Neg, 1, at_factor(Polarity::Neg, 1, seq({4})))));
    auto back = step1(*c, dom(at_factor(Polarity::Pos, 1, at_factor(Polarity::Pos, 1, seq({9, 4})))));
    CHECK(*back == cod(seq({9, 4})));
    CHECK_FALSE(step1(*c, dom(at_factor(Polarity::Pos, 0, seq({})))));
    answer.push_back(1.0);
    CHECK_FALSE(step1(*c, dom(at_factor(Polarity::Pos, 0, seq(answer)))));
  }

  TEST_CASE("cond end to end with constant guards") {
    using W = Wiring;
    for (double g : {0.0, 1.0}) {
      MachinePtr net = chain({rewire(W::unit(), W::pair(W::unit(), W::pair(W::unit(), W::unit()))),
                              tensor(real_const(g), tensor(real_const(7), real_const(9))),
                              cond(Shape::R())});
      CHECK(*step1(*net, cod(seq({}))) == cod(seq({g == 0.0 ? 7.0 : 9.0})));
    }
  }

  TEST_CASE("score protocol") {
    MachinePtr sc = score_machine();
    CHECK(*step1(*sc, cod(s_in(1, {0.3}))) == dom(seq({1, 0.3})));
    CHECK(*step1(*sc, dom(seq({-2, 1, 0.3}))) == cod(s_out(2, {0.3})));
    CHECK_FALSE(step1(*sc, dom(seq({-2}))));
    CHECK_FALSE(step1(*sc, dom(seq({-2, 1, 1.5}))));
    MachinePtr full = compose(real_const(-2), sc);
    State s;
    Run run;
    CHECK(*full->transition(cod(s_in(1, {})), s, run) == cod(s_out(2, {})));
  }

  TEST_CASE("score weight law is exact") {
    Rng rng(32);
    for (int i = 0; i < 200; ++i) {
      double a = (uniform01(rng) - 0.5) * 10, b = uniform01(rng) * 3;
      auto out = step1(*compose(real_const(a), score_machine()), cod(s_in(b, {})));
      REQUIRE(out);
      auto f = factor_of(Polarity::Pos, out->tok);
      CHECK(f->second.weight() == std::fabs(a * b));
    }
  }

  TEST_CASE("sample pops once and memoizes") {
    MachinePtr sa = sample_machine();
    State s = sa->initial();
    Run run;
    Token state_q = at_factor(Polarity::Neg, 0, s_in(1, {0.3, 0.8}));
    Token value_q = at_factor(Polarity::Neg, 1, Token::idx(0, seq({})));
    CHECK_FALSE(step1(*sa, cod(value_q)));
    auto o1 = sa->transition(cod(state_q), s, run);
    CHECK(*o1 == cod(at_factor(Polarity::Pos, 0, s_out(1, {0.8}))));
    CHECK(s.cell == 0.3);
    for (int n : {0, 4, 11}) {
      auto o = sa->transition(cod(at_factor(Polarity::Neg, 1, Token::idx(n, seq({2})))), s, run);
      CHECK(*o == cod(at_factor(Polarity::Pos, 1, Token::idx(n, seq({0.3, 2})))));
    }
    CHECK_FALSE(sa->transition(cod(state_q), s, run));
    State fresh = sa->initial();
    CHECK_FALSE(sa->transition(cod(at_factor(Polarity::Neg, 0, s_in(1, {}))), fresh, run));
  }

  TEST_CASE("random sample matches the trace-driven one") {
    MachinePtr a = sample_machine(), b = sample_machine_rng();
    FixedSource src(0.3);
    std::vector<Signal> p{cod(at_factor(Polarity::Neg, 0, s_in(1, {0.3}))),
                          cod(at_factor(Polarity::Neg, 1, Token::idx(2, seq({}))))};
    std::vector<Signal> q{cod(at_factor(Polarity::Neg, 0, s_in(1, {}))), p[1]};
    auto ra = probe(*a, p), rb = probe(*b, q, {}, &src);
    REQUIRE(ra[0].out);
    REQUIRE(rb[0].out);
    CHECK(ra[1] == rb[1]);
    CHECK(ra[0].out->tok == rb[0].out->tok);
    CounterRng s1(5, 0), s2(5, 0);
    CHECK(probe(*b, q, {}, &s1) == probe(*b, q, {}, &s2));
    CHECK_FALSE(probe(*b, q)[0].out);
  }

  TEST_CASE("state unit passes the state through") {
    CHECK(*step1(*state_unit(), cod(s_in(1.5, {0.2}))) == cod(s_out(1.5, {0.2})));
  }

  TEST_CASE("state multiplication threads through the second factor first") {
    MachinePtr m = state_mult();
    auto o = step1(*m, cod(s_in(1, {0.5})));
    CHECK(*o == dom(at_factor(Polarity::Neg, 1, s_in(1, {0.5}))));
    auto o2 = step1(*m, dom(at_factor(Polarity::Pos, 1, s_out(2, {}))));
    CHECK(*o2 == dom(at_factor(Polarity::Neg, 0, s_in(2, {}))));
    auto o3 = step1(*m, dom(at_factor(Polarity::Pos, 0, s_out(3, {}))));
    CHECK(*o3 == cod(s_out(3, {})));
  }

  TEST_CASE("monad unit law on probes") {
    using W = Wiring;
    Shape s = Shape::S();
    MachinePtr lhs = chain({lunit_in(s), tensor(state_unit(), identity(s)), state_mult()});
    MachinePtr rhs = chain({runit_in(s), tensor(identity(s), state_unit()), state_mult()});
    Rng rng(33);
    std::vector<std::vector<Signal>> ps;
    for (int i = 0; i < 100; ++i) ps.push_back(random_probe(rng, *identity(s), 3));
    CHECK(probe_equiv(*lhs, *identity(s), ps));
    CHECK(probe_equiv(*rhs, *identity(s), ps));
    (void)W::unit();
  }

  TEST_CASE("counter streams are reproducible and uniform") {
    CounterRng a(7, 3), b(7, 3), c(7, 4);
    double sum = 0;
    bool differ = false;
    for (int i = 0; i < 10000; ++i) {
      double x = a.next();
      CHECK(x == b.next());
      differ = differ || x != c.next();
      CHECK((x >= 0 && x < 1));
      sum += x;
    }
    CHECK(differ);
    CHECK(std::fabs(sum / 10000 - 0.5) < 0.02);
  }
}
