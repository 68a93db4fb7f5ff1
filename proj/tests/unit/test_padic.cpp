#include <doctest.h>

#include <random>

#include "iwasawa/cyclotomic.hpp"
#include "iwasawa/error.hpp"
#include "iwasawa/padic.hpp"

using namespace iwasawa;

TEST_CASE("context validates its parameters") {
  CHECK_THROWS_AS(make_context(4), InvalidInput);
  CHECK_THROWS_AS(make_context(2), InvalidInput);
  CHECK_THROWS_AS(make_context(3, 10, 3), InvalidInput);  // guard below 4
  CHECK_THROWS_AS(make_context(3, 8, 8), InvalidInput);   // N must exceed g
  const auto ctx = make_context(3);
  CHECK(ctx->threshold() == 40);
}

TEST_CASE("padic integers: valuation, inverse, centered residues") {
  const auto ctx = make_context(5, 20, 4);
  const PadicInt x(ctx, 50);
  CHECK(x.valuation() == 2);
  CHECK_FALSE(x.is_unit());
  const PadicInt u(ctx, 7);
  CHECK((u * u.inverse()) == PadicInt(ctx, 1));
  CHECK(PadicInt(ctx, -3).to_string() == "-3");
  CHECK_THROWS(x.inverse());
}

TEST_CASE("valuations are exact rationals with an infinity") {
  const Valuation a(1, 3), b(2, 6);
  CHECK(a == b);
  CHECK(a.to_string() == "1/3");
  CHECK(Valuation(4).to_string() == "4/1");
  CHECK(Valuation::infinity() > Valuation(1000));
  CHECK((a + Valuation(2, 3)) == Valuation(1));
  CHECK((Valuation(1, 2) - Valuation(1, 3)) == Valuation::Rational(1, 6));
  CHECK(Valuation(7, 2).at_least(3));
  CHECK_FALSE(Valuation(5, 2).at_least(3));
}

TEST_CASE("property: valuation is additive on products below precision") {
  const auto ctx = make_context(3);
  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    const long a = static_cast<long>(rng() % 100000) + 1, b = static_cast<long>(rng() % 100000) + 1;
    const PadicInt x(ctx, a), y(ctx, b);
    CHECK((x * y).valuation() == x.valuation() + y.valuation());
  }
}
