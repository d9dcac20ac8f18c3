#include <doctest.h>

#include "generators.hpp"
#include "pcfss/goi/dot.hpp"
#include "pcfss/goi/exponential.hpp"
#include "pcfss/goi/fixpoint.hpp"
#include "pcfss/goi/prim_machines.hpp"
#include "pcfss/goi/probe.hpp"
#include "pcfss/goi/wires.hpp"
#include "pcfss/interp.hpp"
#include "pcfss/parse.hpp"

using namespace pcfss;
using namespace pcfss::goi;
using namespace pcfss::testkit;

namespace {

Token seq(std::vector<double> xs) { return Token::seq(std::move(xs)); }
Signal cod(Token t) { return {End::Cod, std::move(t)}; }
Signal dom(Token t) { return {End::Dom, std::move(t)}; }

std::optional<Signal> step1(const Machine& m, const Signal& in) {
  State s = m.initial();
  Run run;
  return m.transition(in, s, run);
}

std::vector<std::vector<Signal>> probes_for(Rng& rng, const Machine& m, std::size_t count,
                                            std::size_t len) {
  std::vector<std::vector<Signal>> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(random_probe(rng, m, len));
  return out;
}

MachinePtr compiled(const std::string& src) { return interp_term(Context{}, parse_program(src)); }

}  // namespace

TEST_SUITE("goi_core") {
  TEST_CASE("shape duality normalizes") {
    Shape x = Shape::tensor(Shape::R(), Shape::bang(Shape::S0()));
    CHECK(Shape::dual(Shape::dual(x)).identical(x));
    CHECK(Shape::dual(Shape::I()).identical(Shape::I()));
    CHECK(Shape::dual(x) == Shape::tensor(Shape::bang(Shape::dual(Shape::S0())), Shape::R()));
    CHECK(Shape::dual(Shape::R()) == Shape::R());
    CHECK_FALSE(Shape::S0() == Shape::dual(Shape::S0()));
    CHECK(Shape::S() == Shape::tensor(Shape::S0(), Shape::dual(Shape::S0())));
  }

  TEST_CASE("void shapes") {
    CHECK(Shape::I().is_void());
    CHECK(Shape::bang(Shape::tensor(Shape::I(), Shape::I())).is_void());
    CHECK_FALSE(Shape::S().is_void());
  }

  TEST_CASE("tensor tokens: forward factor 0 is InL, backward factor 0 is InR") {
    Token t = seq({1});
    CHECK(at_factor(Polarity::Pos, 0, t) == Token::inl(t));
    CHECK(at_factor(Polarity::Neg, 0, t) == Token::inr(t));
    auto f = factor_of(Polarity::Neg, Token::inl(t));
    REQUIRE(f);
    CHECK(f->first == 1);
  }

  TEST_CASE("validate follows the shape") {
    Shape s = Shape::S();
    CHECK(validate(s, Polarity::Pos, at_factor(Polarity::Pos, 0, Token::wtrace(1, {0.5}))));
    CHECK(validate(s, Polarity::Neg, at_factor(Polarity::Neg, 1, Token::wtrace(1, {0.5}))));
    CHECK_FALSE(validate(s, Polarity::Neg, at_factor(Polarity::Neg, 0, Token::wtrace(1, {}))));
    CHECK_FALSE(validate(s, Polarity::Pos, at_factor(Polarity::Pos, 0, Token::wtrace(-1, {}))));
    CHECK_FALSE(validate(s, Polarity::Pos, at_factor(Polarity::Pos, 0, Token::wtrace(1, {1.5}))));
    CHECK(validate(Shape::bang(Shape::R()), Polarity::Neg, Token::idx(3, seq({}))));
    CHECK_FALSE(validate(Shape::bang(Shape::R()), Polarity::Neg, seq({})));
    CHECK_FALSE(validate(Shape::I(), Polarity::Pos, Token::star()));
  }

  TEST_CASE("generated tokens validate") {
    Rng rng(1);
    for (int i = 0; i < 500; ++i) {
      Shape s = random_shape(rng, 4);
      for (Polarity p : {Polarity::Pos, Polarity::Neg})
        if (auto t = random_token(rng, s, p)) CHECK(validate(s, p, *t));
    }
  }

  TEST_CASE("identity and composition with identity") {
    Shape x = Shape::tensor(Shape::R(), Shape::bang(Shape::R()));
    MachinePtr id = identity(x);
    Token t = at_factor(Polarity::Pos, 1, Token::idx(2, seq({4})));
    CHECK(*step1(*id, dom(t)) == cod(t));
    CHECK(*step1(*compose(id, id), dom(t)) == cod(t));
    Rng rng(2);
    auto ps = probes_for(rng, *id, 50, 5);
    CHECK(probe_equiv(*id, *compose(id, id), ps));
    auto r = probe(*id, ps[0]);
    for (std::size_t i = 0; i < r.size(); ++i) {
      REQUIRE(r[i].out);
      CHECK(r[i].out->tok == ps[0][i].tok);
    }
  }

  TEST_CASE("constant through negation") {
    MachinePtr m = compose(real_const(5), fn_machine(*builtin_prims().find("neg")));
    CHECK(*step1(*m, cod(seq({}))) == cod(seq({-5})));
  }

  TEST_CASE("tensor routes by factor and keeps states apart") {
    MachinePtr m = tensor(real_const(2), real_const(3));
    auto out = step1(*m, cod(at_factor(Polarity::Neg, 1, seq({7}))));
    CHECK(*out == cod(at_factor(Polarity::Pos, 1, seq({3, 7}))));
    MachinePtr st = tensor(sample_machine(), sample_machine());
    State s = st->initial();
    Run run;
    Token state_in = at_factor(Polarity::Neg, 0, at_factor(Polarity::Neg, 1, Token::wtrace(1, {0.4})));
    REQUIRE(st->transition(cod(at_factor(Polarity::Neg, 0, state_in)), s, run));
    REQUIRE(s.parts.size() == 2);
    CHECK(s.parts[0].cell == 0.4);
    CHECK_FALSE(s.parts[1].cell.has_value());
  }

  TEST_CASE("unit link forwards from one end to the other") {
    MachinePtr u = unit_link(Shape::R());
    auto out = step1(*u, cod(at_factor(Polarity::Neg, 1, seq({1}))));
    CHECK(*out == cod(at_factor(Polarity::Pos, 0, seq({1}))));
  }

  TEST_CASE("symmetry swaps factors") {
    MachinePtr s = symmetry(Shape::R(), Shape::bang(Shape::R()));
    auto out = step1(*s, dom(at_factor(Polarity::Pos, 0, seq({1}))));
    CHECK(*out == cod(at_factor(Polarity::Pos, 1, seq({1}))));
  }

  TEST_CASE("yanking: counit after unit is the identity") {
    Rng rng(3);
    for (int i = 0; i < 20; ++i) {
      Shape x = random_shape(rng, 3);
      using W = Wiring;
      Shape xp = Shape::dual(x);
      MachinePtr snake = chain({
          runit_in(x),
          tensor(identity(x), unit_link(xp)),
          rewire(W::pair(W::leaf(0, x), W::pair(W::leaf(1, xp), W::leaf(2, x))),
                 W::pair(W::pair(W::leaf(0, x), W::leaf(1, xp)), W::leaf(2, x))),
          tensor(counit_link(xp), identity(x)),
          lunit_out(x),
      });
      CAPTURE(x.str());
      CHECK(probe_equiv(*snake, *identity(x), probes_for(rng, *identity(x), 20, 4)));
    }
  }

  TEST_CASE("rewire rejects mismatched leaves") {
    using W = Wiring;
    CHECK_THROWS(rewire(W::leaf(0, Shape::R()), W::leaf(1, Shape::R())));
    CHECK_THROWS(rewire(W::leaf(0, Shape::R()), W::leaf(0, Shape::S0())));
  }

  TEST_CASE("composition requires matching interfaces") {
    CHECK_THROWS(compose(real_const(1), identity(Shape::S0())));
  }

  TEST_CASE("bang runs copies independently") {
    MachinePtr b = bang(sample_machine());
    State s = b->initial();
    Run run;
    Token state_in = at_factor(Polarity::Neg, 0, at_factor(Polarity::Neg, 1, Token::wtrace(1, {0.4})));
    REQUIRE(b->transition(cod(Token::idx(7, state_in)), s, run));
    CHECK(s.copies.size() == 1);
    CHECK(s.copies.count(7) == 1);
    MachinePtr r5 = bang(real_const(5));
    CHECK(*step1(*r5, cod(Token::idx(9, seq({1})))) == cod(Token::idx(9, seq({5, 1}))));
  }

  TEST_CASE("digging follows the Cantor pairing") {
    CHECK(cantor_pair(1, 0) == 2);
    CHECK(cantor_pair(0, 1) == 1);
    CHECK(cantor_pair(0, 0) == 0);
    Rng rng(4);
    for (int i = 0; i < 200; ++i) {
      Nat n = rng() % 100000, m = rng() % 100000;
      auto [a, b] = cantor_unpair(cantor_pair(n, m));
      CHECK(a == n);
      CHECK(b == m);
    }
    Nat big = Nat(1) << 200;
    CHECK(cantor_unpair(cantor_pair(big, big + 3)) == std::make_pair(big, Nat(big + 3)));
    MachinePtr dg = digging(Shape::R());
    Token x = seq({1});
    CHECK(*step1(*dg, dom(Token::idx(2, x))) == cod(Token::idx(1, Token::idx(0, x))));
    CHECK(*step1(*dg, cod(Token::idx(1, Token::idx(0, x)))) == dom(Token::idx(2, x)));
    CHECK(*step1(*dg, dom(Token::idx(1, x))) == cod(Token::idx(0, Token::idx(1, x))));
  }

  TEST_CASE("digging refuses indices beyond the cap") {
    MachinePtr dg = digging(Shape::R());
    State s;
    ExecLimits l;
    l.max_index_bits = 64;
    Run run(l);
    Nat big = Nat(1) << 40;
    CHECK_FALSE(dg->transition(cod(Token::idx(big, Token::idx(big, seq({})))), s, run));
    CHECK(run.failure() == Failure::FuelExhausted);
  }

  TEST_CASE("contraction: even to the first branch, odd to the second, both ways") {
    MachinePtr c = contraction(Shape::R());
    Token x = seq({});
    CHECK(*step1(*c, dom(Token::idx(4, x))) == cod(at_factor(Polarity::Pos, 0, Token::idx(2, x))));
    CHECK(*step1(*c, dom(Token::idx(5, x))) == cod(at_factor(Polarity::Pos, 1, Token::idx(2, x))));
    CHECK(*step1(*c, cod(at_factor(Polarity::Neg, 0, Token::idx(2, x)))) == dom(Token::idx(4, x)));
    CHECK(*step1(*c, cod(at_factor(Polarity::Neg, 1, Token::idx(2, x)))) == dom(Token::idx(5, x)));
  }

  TEST_CASE("dereliction and weakening") {
    MachinePtr d = dereliction(Shape::R());
    CHECK(*step1(*d, cod(seq({1}))) == dom(Token::idx(0, seq({1}))));
    CHECK(*step1(*d, dom(Token::idx(3, seq({1})))) == cod(seq({1})));
    MachinePtr w = weakening(Shape::R());
    CHECK_FALSE(step1(*w, dom(Token::idx(0, seq({})))));
  }

  TEST_CASE("structural wires are stateless") {
    Rng rng(5);
    Shape x = Shape::tensor(Shape::R(), Shape::S());
    std::vector<MachinePtr> wires = {identity(x),         unit_link(x),   counit_link(x),
                                     symmetry(x, x),      dereliction(x), digging(x),
                                     contraction(x),      weakening(x),   state_unit(),
                                     state_mult(),        score_machine(), cond(Shape::S())};
    for (const auto& m : wires) {
      CAPTURE(m->label());
      CHECK(m->stateless());
      State s = m->initial();
      Run run;
      for (const auto& in : random_probe(rng, *m, 20)) m->transition(in, s, run);
      CHECK(s.parts.empty());
      CHECK(s.copies.empty());
      CHECK_FALSE(s.cell);
    }
  }

  TEST_CASE("composition is associative on probes") {
    Rng rng(6);
    Shape x = Shape::bang(Shape::R());
    MachinePtr f = digging(Shape::R());
    MachinePtr g = bang(dereliction(Shape::R()));
    MachinePtr h = contraction(Shape::R());
    MachinePtr left = compose(compose(f, g), h), right = compose(f, compose(g, h));
    CHECK(probe_equiv(*left, *right, probes_for(rng, *left, 100, 6)));
    MachinePtr s1 = compiled("let x = sample in let w = score(x) in x");
    MachinePtr a = compose(compose(s1, identity(s1->cod())), identity(s1->cod()));
    MachinePtr b = compose(s1, compose(identity(s1->cod()), identity(s1->cod())));
    CHECK(probe_equiv(*a, *b, probes_for(rng, *a, 100, 6)));
  }

  TEST_CASE("compose gives up after its bounce fuel") {
    // A loop that bounces forever between two identity-like halves.
    MachinePtr d = dagger(dereliction(Shape::R()));
    ExecLimits l;
    l.bounce_fuel = 1000;
    auto r = probe(*d, {cod(seq({}))}, l);
    REQUIRE(r.size() == 1);
    CHECK_FALSE(r[0].out);
    CHECK(r[0].cause == Failure::FuelExhausted);
  }

  TEST_CASE("iterants(m, 0) is everywhere undefined") {
    MachinePtr m = compose(dereliction(Shape::R()), fn_machine(*builtin_prims().find("neg")));
    MachinePtr it0 = iterants(m, 0);
    Rng rng(7);
    for (const auto& p : probes_for(rng, *it0, 20, 3))
      for (const auto& e : probe(*it0, p)) CHECK_FALSE(e.out);
  }

  TEST_CASE("iterants form a chain below the dagger") {
    // m = lam-free body: answers a query from the first unfolding, so one
    // unfolding already suffices.
    MachinePtr m = chain({weakening(Shape::R()), real_const(4)});
    MachinePtr fixed = dagger(m);
    Rng rng(8);
    auto ps = probes_for(rng, *fixed, 30, 4);
    for (unsigned k = 0; k <= 4; ++k) {
      MachinePtr it = iterants(m, k);
      for (const auto& p : ps) {
        auto ri = probe(*it, p), rd = probe(*fixed, p);
        for (std::size_t i = 0; i < ri.size(); ++i)
          if (ri[i].out) CHECK(ri[i] == rd[i]);
      }
    }
    CHECK(*step1(*fixed, cod(seq({}))) == cod(seq({4})));
  }

  TEST_CASE("probe is deterministic and reflexive") {
    Rng rng(9);
    MachinePtr m = compiled("let x = sample in let y = sample in add(x, y)");
    auto ps = probes_for(rng, *m, 50, 5);
    CHECK(probe_equiv(*m, *m, ps));
    for (const auto& p : ps) CHECK(probe(*m, p) == probe(*m, p));
  }

  TEST_CASE("every defined transition emits a valid token") {
    Rng rng(10);
    ExecLimits l;
    l.validate = true;
    for (int i = 0; i < 60; ++i) {
      Term t = random_term(rng, Context{}, Type::real(), 3);
      MachinePtr m = interp_term(Context{}, t);
      for (const auto& p : probes_for(rng, *m, 5, 4))
        for (const auto& e : probe(*m, p, l)) CHECK(e.cause != Failure::InvalidToken);
    }
  }

  TEST_CASE("validation flags a machine that emits a bad token") {
    MachinePtr bad = make_wire("bad", Shape::I(), Shape::R(),
                               [](const Signal&, Run&) -> std::optional<Signal> {
                                 return Signal{End::Cod, Token::star()};
                               });
    ExecLimits l;
    l.validate = true;
    auto r = probe(*bad, {cod(seq({}))}, l);
    CHECK(r[0].cause == Failure::InvalidToken);
  }

  TEST_CASE("dot export is stable and names machines") {
    MachinePtr m = compiled("let x = sample in let w = score(x) in x");
    std::string a = to_dot(*m, "g"), b = to_dot(*compiled("let x = sample in let w = score(x) in x"), "g");
    CHECK(a == b);
    CHECK(a.rfind("digraph", 0) == 0);
    CHECK(a.find("\"sa\"") != std::string::npos);
    CHECK(a.find("\"sc\"") != std::string::npos);
    CHECK(a.find("->") != std::string::npos);
    std::string f = to_dot(*compiled("let h = fix f n: Real -> Real. n in h 1.0"), "g");
    CHECK(f.find("cluster") != std::string::npos);
  }
}
