#include <doctest.h>

#include <random>

#include "../support/oracles.hpp"
#include "iwasawa/cyclotomic.hpp"
#include "iwasawa/error.hpp"

using namespace iwasawa;

namespace {

CyclotomicNumber random_element(const ContextPtr& ctx, int level, std::mt19937_64& rng) {
  const std::int64_t d = totient_pow(ctx->prime(), level);
  poly::Coeffs c(static_cast<std::size_t>(d));
  for (auto& x : c) x = static_cast<long>(rng() % 201) - 100;
  return CyclotomicNumber(ctx, level, c);
}

CyclotomicNumber zeta_minus_one(const ContextPtr& ctx, int level) {
  return CyclotomicNumber::zeta_power(ctx, level, 1).add_constant(-1);
}

}  // namespace

TEST_CASE("cyclo_poly matches the oracle") {
  CHECK(cyclo_poly(3, 1) == std::vector<int>{1, 1, 1});
  CHECK(cyclo_poly(3, 2) == std::vector<int>{1, 0, 0, 1, 0, 0, 1});
  CHECK(cyclo_poly(5, 1) == std::vector<int>{1, 1, 1, 1, 1});
  for (unsigned p : {3u, 5u, 7u})
    for (int m = 1; m <= 3; ++m) CHECK(cyclo_poly(p, m) == oracle::cyclotomic(p, m));
  CHECK_THROWS_AS(cyclo_poly(3, 0), InvalidInput);
}

TEST_CASE("power basis reduction: zeta^(p^m) = 1 and the minimal relation") {
  const auto ctx = make_context(3);
  CHECK(CyclotomicNumber::zeta_power(ctx, 2, 9) == CyclotomicNumber::constant(ctx, 2, 1));
  // 1 + zeta^3 + zeta^6 = 0 at level 2.
  auto s = CyclotomicNumber::constant(ctx, 2, 1) + CyclotomicNumber::zeta_power(ctx, 2, 3) +
           CyclotomicNumber::zeta_power(ctx, 2, 6);
  CHECK(s.is_zero());
  CHECK(CyclotomicNumber::zeta_power(ctx, 2, -1) * CyclotomicNumber::zeta_power(ctx, 2, 1) ==
        CyclotomicNumber::constant(ctx, 2, 1));
}

TEST_CASE("cyclo_embed") {
  const auto ctx = make_context(3);
  CHECK(cyclo_embed(CyclotomicNumber::zeta_power(ctx, 1, 1), 2) == CyclotomicNumber::zeta_power(ctx, 2, 3));
  CHECK(cyclo_embed(CyclotomicNumber::constant(ctx, 1, 7), 3) == CyclotomicNumber::constant(ctx, 3, 7));
  CHECK(cyclo_embed(zeta_minus_one(ctx, 1), 2) == CyclotomicNumber::zeta_power(ctx, 2, 3).add_constant(-1));
  CHECK_THROWS_AS(cyclo_embed(CyclotomicNumber::zeta_power(ctx, 2, 1), 1), InvalidInput);
  std::mt19937_64 rng(3);
  for (int i = 0; i < 20; ++i) {
    const auto x = random_element(ctx, 1, rng), y = random_element(ctx, 1, rng);
    CHECK(cyclo_embed(x * y, 3) == cyclo_embed(x, 3) * cyclo_embed(y, 3));
  }
}

TEST_CASE("cyclo_valuation examples") {
  for (unsigned p : {3u, 5u}) {
    const auto ctx = make_context(p);
    for (int m = 1; m <= 3; ++m) {
      CHECK(cyclo_valuation(CyclotomicNumber::constant(ctx, m, p)) == Valuation(1));
      CHECK(cyclo_valuation(zeta_minus_one(ctx, m)) == Valuation(1, totient_pow(p, m)));
    }
  }
  const auto ctx = make_context(3);
  // Psi_3(zeta_9) = 1 + zeta_9 + zeta_9^2.
  const auto psi = CyclotomicNumber::constant(ctx, 2, 1) + CyclotomicNumber::zeta_power(ctx, 2, 1) +
                   CyclotomicNumber::zeta_power(ctx, 2, 2);
  CHECK(cyclo_valuation(psi) == Valuation(1, 3));
  CHECK_THROWS_AS(cyclo_valuation(CyclotomicNumber(ctx, 2)), PrecisionExhausted);
}

TEST_CASE("norm and uniformizer routes agree") {
  std::mt19937_64 rng(5);
  for (unsigned p : {3u, 5u}) {
    const auto ctx = make_context(p);
    for (int level = 1; level <= 2; ++level) {
      for (int i = 0; i < 15; ++i) {
        const auto x = random_element(ctx, level, rng);
        if (x.is_zero()) continue;
        CHECK(valuation_by_norm(x) == valuation_by_uniformizer(x));
      }
    }
  }
}

TEST_CASE("property: valuation is multiplicative") {
  std::mt19937_64 rng(7);
  const auto ctx = make_context(3);
  for (int level = 1; level <= 3; ++level) {
    for (int i = 0; i < 20; ++i) {
      auto x = random_element(ctx, level, rng) * zeta_minus_one(ctx, level);
      auto y = random_element(ctx, level, rng);
      if (x.is_zero() || y.is_zero()) continue;
      CHECK(cyclo_valuation(x * y) == cyclo_valuation(x) + cyclo_valuation(y));
    }
  }
}

TEST_CASE("division by the uniformizer and unit inverses") {
  const auto ctx = make_context(3);
  std::mt19937_64 rng(9);
  const auto pi = zeta_minus_one(ctx, 2);
  for (int i = 0; i < 10; ++i) {
    const auto x = random_element(ctx, 2, rng);
    const auto back = divide_by_uniformizer(x * pi) - x;
    // Only the last pi-digit is lost.
    CHECK(zero_test(back).numerically_zero);
  }
  const auto u = CyclotomicNumber::constant(ctx, 2, 2) + pi;
  CHECK(zero_test(inverse_unit(u) * u - CyclotomicNumber::constant(ctx, 2, 1)).numerically_zero);
}

TEST_CASE("zero test separates exact and numerical zeros") {
  const auto ctx = make_context(3, 20, 4);
  const auto z = zero_test(CyclotomicNumber(ctx, 1));
  CHECK(z.exactly_zero);
  CHECK(z.numerically_zero);
  mpz_class big;
  mpz_ui_pow_ui(big.get_mpz_t(), 3, 17);
  const auto y = zero_test(CyclotomicNumber::constant(ctx, 1, big));
  CHECK_FALSE(y.exactly_zero);
  CHECK(y.numerically_zero);
  mpz_ui_pow_ui(big.get_mpz_t(), 3, 13);
  const auto w = zero_test(CyclotomicNumber::constant(ctx, 1, big));
  CHECK_FALSE(w.numerically_zero);
  CHECK(w.precision_sensitive);
}
