#include <doctest.h>

#include "corpus.hpp"
#include "generators.hpp"
#include "pcfss/parse.hpp"
#include "pcfss/typer.hpp"

using namespace pcfss;
using namespace pcfss::testkit;

TEST_SUITE("typer") {
  TEST_CASE("accepted programs get their expected types") {
    for (const auto& c : typing_accept()) {
      CAPTURE(c.name);
      CHECK(infer_type(Context{}, parse(c.source)) == parse_type(c.type));
    }
  }

  TEST_CASE("rejected programs fail with the expected error kind") {
    for (const auto& c : typing_reject()) {
      CAPTURE(c.name);
      Term t = parse(c.source);
      try {
        infer_type(Context{}, t);
        FAIL("accepted");
      } catch (const TypeError& e) {
        CHECK(e.kind() == *c.error);
      }
    }
  }

  TEST_CASE("mismatch messages name both types and the subterm") {
    try {
      infer_type(Context{}, parse_program("add(1.0, skip)"));
      FAIL("accepted");
    } catch (const TypeError& e) {
      std::string m = e.what();
      CHECK(m.find("Real") != std::string::npos);
      CHECK(m.find("Unit") != std::string::npos);
      CHECK(m.find("skip") != std::string::npos);
      CHECK(m.rfind("1:", 0) == 0);
    }
  }

  TEST_CASE("errors point at the offending subterm") {
    try {
      infer_type(Context{}, parse_program("let x = 1.0 in\n  score(skip)"));
      FAIL("accepted");
    } catch (const TypeError& e) {
      CHECK(e.pos().line == 2);
    }
  }

  TEST_CASE("check_closed_real") {
    CHECK_NOTHROW(check_closed_real(parse_program("sample")));
    CHECK_THROWS_AS(check_closed_real(parse_program("skip")), TypeError);
    CHECK_THROWS_AS(check_closed_real(parse_program("lam x: Real. x")), TypeError);
  }

  TEST_CASE("context extension hides older bindings") {
    Context c = Context{}.extend("x", Type::real()).extend("y", Type::unit()).extend("x", Type::unit());
    REQUIRE(c.size() == 3);
    CHECK(*c.lookup("x") == 2);
    CHECK(*c.lookup("y") == 1);
    CHECK(c.entries()[0].name != "x");
    CHECK(c.prefix().size() == 2);
  }

  TEST_CASE("generated terms type-check at their target type") {
    Rng rng(5);
    for (int i = 0; i < 300; ++i) {
      Type a = random_type(rng, 2);
      Term t = random_term(rng, Context{}, a, 3);
      CAPTURE(print_term(t));
      CHECK(infer_type(Context{}, t) == a);
    }
  }

  TEST_CASE("typing is stable under substitution of closed values") {
    Rng rng(6);
    for (int i = 0; i < 200; ++i) {
      Type b = random_type(rng, 1);
      Context ctx = Context{}.extend("v", b);
      Type a = random_type(rng, 1);
      Term m = random_term(rng, ctx, a, 3);
      Value v = random_value(rng, Context{}, b, 2);
      CAPTURE(print_term(m));
      CHECK(infer_type(Context{}, substitute(m, "v", v)) == a);
    }
  }
}
