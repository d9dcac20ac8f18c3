#include <doctest.h>

#include <cmath>

#include "corpus.hpp"
#include "generators.hpp"
#include "oracle.hpp"
#include "pcfss/opsem.hpp"
#include "pcfss/parse.hpp"

using namespace pcfss;
using namespace pcfss::testkit;

namespace {

Terminated done(const RunOutcome& r) {
  REQUIRE(std::holds_alternative<Terminated>(r));
  return std::get<Terminated>(r);
}

bool same(double a, double b) { return (std::isnan(a) && std::isnan(b)) || a == b; }

}  // namespace

TEST_SUITE("opsem") {
  TEST_CASE("score multiplies the weight by the absolute value") {
    auto r = done(eval_sampling(parse_program("let w = score(-2.0) in 7.0"), 1.5, {}));
    CHECK(r.value == 7.0);
    CHECK(r.weight == 3.0);
    CHECK(r.leftover.empty());
  }

  TEST_CASE("sample pops the trace head") {
    auto r = done(eval_sampling(parse_program("let x = sample in let y = sample in sub(x, y)"), 1.0,
                                {0.75, 0.25, 0.5}));
    CHECK(r.value == 0.5);
    CHECK(r.leftover == Trace{0.5});
  }

  TEST_CASE("sample on an empty trace blocks") {
    auto r = eval_sampling(parse_program("sample"), 1.0, {});
    REQUIRE(std::holds_alternative<Blocked>(r));
    CHECK(std::get<Blocked>(r).reason == BlockReason::TraceUnderflow);
  }

  TEST_CASE("if takes the then branch exactly on zero") {
    CHECK(done(eval_sampling(parse_program("if 0.0 then 1.0 else 2.0"), 1, {})).value == 1.0);
    CHECK(done(eval_sampling(parse_program("if -0.0 then 1.0 else 2.0"), 1, {})).value == 1.0);
    CHECK(done(eval_sampling(parse_program("if 1.0e-300 then 1.0 else 2.0"), 1, {})).value == 2.0);
    CHECK(done(eval_sampling(parse_program("if nan then 1.0 else 2.0"), 1, {})).value == 2.0);
  }

  TEST_CASE("det_reduce contracts each redex form") {
    CHECK(det_reduce(parse_program("(lam x: Real. add(x, x)) 2.0")) ==
          parse_program("add(2.0, 2.0)"));
    CHECK(det_reduce(parse_program("let x = 3.0 in x")) == parse_program("3.0"));
    CHECK(det_reduce(parse_program("add(1.0, 2.0)")) == parse_program("3.0"));
    CHECK(det_reduce(parse_program("if 0.0 then 1.0 else 2.0")) == parse_program("1.0"));
    Term unfolded = det_reduce(parse_program("(fix f x: Real -> Real. f x) 1.0"));
    CHECK(unfolded == parse_program("(fix f x: Real -> Real. f x) 1.0"));
    CHECK_THROWS_AS(det_reduce(parse_program("sample")), NotARedex);
  }

  TEST_CASE("fix whose parameter shadows the self name") {
    auto r = done(eval_sampling(parse_program("let h = fix f f: Real -> Real. add(f, 1.0) in h 1.0"),
                                1.0, {}));
    CHECK(r.value == 2.0);
  }

  TEST_CASE("divergence exhausts fuel") {
    auto r = eval_sampling(parse_program("let h = fix f x: Real -> Real. f x in h 1.0"), 1.0, {}, 1000);
    REQUIRE(std::holds_alternative<FuelExhausted>(r));
    CHECK(std::get<FuelExhausted>(r).steps == 1000);
  }

  TEST_CASE("weight_val reports the cause of undefinedness") {
    auto under = weight_val(parse_program("sample"), {});
    CHECK(std::get<Undefined>(under) == Undefined::TraceUnderflow);
    auto left = weight_val(parse_program("1.0"), {0.5});
    CHECK(std::get<Undefined>(left) == Undefined::TraceLeftover);
    auto fuel = weight_val(parse_program("let h = fix f x: Real -> Real. f x in h 1.0"), {}, 100);
    CHECK(std::get<Undefined>(fuel) == Undefined::FuelExhausted);
    auto ok = weight_val(parse_program("let x = sample in let w = score(x) in x"), {0.25});
    CHECK(std::get<WeightVal>(ok).weight == 0.25);
    CHECK(std::get<WeightVal>(ok).value == 0.25);
  }

  TEST_CASE("step_config preserves typing and advances one redex") {
    Config c{parse_program("let x = sample in add(x, 1.0)"), 1.0, {0.5}};
    auto n = step_config(c);
    REQUIRE(std::holds_alternative<Config>(n));
    const auto& c1 = std::get<Config>(n);
    CHECK(c1.term == parse_program("let x = 0.5 in add(x, 1.0)"));
    CHECK(c1.trace.empty());
    auto v = step_config(Config{parse_program("1.0"), 1.0, {}});
    REQUIRE(std::holds_alternative<Blocked>(v));
    CHECK(std::get<Blocked>(v).reason == BlockReason::ValueReached);
  }

  TEST_CASE("eval_lazy draws in evaluation order") {
    std::vector<double> pool{0.1, 0.2};
    std::size_t i = 0;
    auto r = done(eval_lazy(parse_program("let x = sample in let y = sample in sub(y, x)"), 1.0,
                            [&] { return pool[i++]; }));
    CHECK(r.value == 0.2 - 0.1);
  }

  TEST_CASE("reducer agrees with the big-step oracle on the corpus") {
    Rng rng(21);
    for (const auto& p : adequacy_corpus()) {
      CAPTURE(p.name);
      Term t = parse(p.source);
      for (int k = 0; k < 20; ++k) {
        Trace u = k % 2 ? natural_trace(rng, t, 8) : random_trace(rng, 4);
        auto o = oracle_eval(t, 1.0, u);
        auto w = weight_val(t, u);
        REQUIRE(o.has_value() == std::holds_alternative<WeightVal>(w));
        if (o) {
          CHECK(same(o->value, std::get<WeightVal>(w).value));
          CHECK(same(o->weight, std::get<WeightVal>(w).weight));
        }
      }
    }
  }

  TEST_CASE("reducer agrees with the big-step oracle on generated programs") {
    Rng rng(22);
    for (int i = 0; i < 300; ++i) {
      Term t = random_term(rng, Context{}, Type::real(), 4);
      CAPTURE(print_term(t));
      Trace u = natural_trace(rng, t, 10);
      auto o = oracle_eval(t, 1.0, u);
      auto w = weight_val(t, u);
      REQUIRE(o.has_value() == std::holds_alternative<WeightVal>(w));
      if (o) {
        CHECK(same(o->value, std::get<WeightVal>(w).value));
        CHECK(same(o->weight, std::get<WeightVal>(w).weight));
      }
    }
  }

  TEST_CASE("weights stay nonnegative") {
    Rng rng(23);
    for (int i = 0; i < 300; ++i) {
      Term t = random_term(rng, Context{}, Type::real(), 4);
      auto r = eval_sampling(t, random_weight(rng), natural_trace(rng, t, 10));
      if (auto* d = std::get_if<Terminated>(&r)) CHECK((d->weight >= 0 || std::isnan(d->weight)));
    }
  }
}
