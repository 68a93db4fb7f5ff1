#include <doctest.h>

#include <random>

#include "../support/oracles.hpp"
#include "iwasawa/error.hpp"
#include "iwasawa/generators.hpp"
#include "iwasawa/series.hpp"

using namespace iwasawa;

namespace {

OneVarSeries ints(const ContextPtr& ctx, std::vector<long> c) { return OneVarSeries::from_integers(ctx, c); }

std::vector<std::optional<int>> coefficient_valuations(const OneVarSeries& f) {
  std::vector<std::optional<int>> v;
  for (int i = 0; i <= f.degree(); ++i) {
    if (f.coefficient(i) == 0) v.emplace_back();
    else v.emplace_back(f.context()->valuation(f.coefficient(i)));
  }
  return v;
}

}  // namespace

TEST_CASE("omega, phi_poly and omega_pm examples") {
  const auto ctx = make_context(3);
  CHECK(omega(ctx, 0) == ints(ctx, {0, 1}));
  CHECK(omega(ctx, 1) == ints(ctx, {0, 3, 3, 1}));
  CHECK(omega(ctx, 2).degree() == 9);
  CHECK(phi_poly(ctx, 1) == ints(ctx, {3, 3, 1}));
  CHECK(omega_pm(ctx, 1, +1) == ints(ctx, {0, 1}));
  CHECK(omega_pm(ctx, 1, -1) == ints(ctx, {0, 3, 3, 1}));
  CHECK(omega_pm(ctx, 2, +1) == omega(ctx, 0) * phi_poly(ctx, 2));
  // (1+X)^6 + (1+X)^3 + 1
  const auto y = ints(ctx, {1, 1});
  const auto y3 = y * y * y;
  CHECK(phi_poly(ctx, 2) == y3 * y3 + y3 + ints(ctx, {1}));
  for (unsigned p : {3u, 5u, 7u}) {
    const auto c = make_context(p);
    for (int n = 1; n <= 3; ++n) CHECK(phi_poly(c, n).coefficient(0) == p);
  }
}

TEST_CASE("exact identities: omega+ omega- = X omega and Phi_n(X) = Psi(1+X)") {
  for (unsigned p : {3u, 5u}) {
    for (int n = 0; n <= 4; ++n) {
      const auto lhs = poly::multiply_exact(omega_pm_exact(p, n, +1), omega_pm_exact(p, n, -1));
      const auto rhs = poly::multiply_exact({0, 1}, omega_exact(p, n));
      CHECK(lhs == rhs);
      if (n >= 1) CHECK(poly::multiply_exact(phi_poly_exact(p, n), omega_exact(p, n - 1)) == omega_exact(p, n));
    }
  }
}

TEST_CASE("evaluation at characters") {
  const auto ctx = make_context(3);
  const CharacterClass t11{1, 1, 1}, t21{2, 1, 1};
  // (1 + T_p)^3 at a class with r = 1 is 1.
  const auto one_plus = TwoVarSeries::constant(ctx, 1) + TwoVarSeries::monomial(ctx, 1, 0);
  CHECK(eval_at_character(one_plus * one_plus * one_plus, t11) == CyclotomicNumber::constant(ctx, 1, 1));
  const auto tp = eval_at_character(TwoVarSeries::monomial(ctx, 1, 0), t11);
  CHECK(cyclo_valuation(tp) == Valuation(1, 2));
  CHECK(cyclo_valuation(eval_at_character(TwoVarSeries::in_tp(phi_poly(ctx, 1)), t21)) == Valuation(1, 3));
  // One-variable series evaluate in T_p.
  CHECK(eval_at_character(phi_poly(ctx, 1), t21) == eval_at_character(TwoVarSeries::in_tp(phi_poly(ctx, 1)), t21));
  // omega_n vanishes exactly at roots whose order divides p^n.
  for (int n = 0; n <= 3; ++n) {
    for (int ord = 0; ord <= 4; ++ord) {
      const auto v = eval_at_root(omega(ctx, n), std::max(ord, 1), ord == 0 ? 0 : 1);
      CHECK(zero_test(v).exactly_zero == (ord <= n));
    }
  }
}

TEST_CASE("property: evaluation is a ring homomorphism") {
  const auto ctx = make_context(3);
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    const auto f = gen::random_polynomial(ctx, seed), g = gen::random_polynomial(ctx, seed + 100);
    for (const CharacterClass& t : {CharacterClass{1, 1, 2}, CharacterClass{2, 1, 1}, CharacterClass{1, 3, 1}}) {
      CHECK(eval_at_character(f + g, t) == eval_at_character(f, t) + eval_at_character(g, t));
      CHECK(eval_at_character(f * g, t) == eval_at_character(f, t) * eval_at_character(g, t));
    }
  }
}

TEST_CASE("truncated series need enough terms for the requested root order") {
  const auto ctx = make_context(3);
  const int need = required_truncation(*ctx, 2);
  CHECK(need == ctx->threshold() * 6 - 1);
  const OneVarSeries short_f(ctx, {1, 1}, need - 1);
  CHECK_THROWS_AS(eval_at_root(short_f, 2, 1), TruncationInsufficient);
  const OneVarSeries ok_f(ctx, {1, 1}, need);
  CHECK(eval_at_root(ok_f, 2, 1) == CyclotomicNumber::zeta_power(ctx, 2, 1));
}

TEST_CASE("truncation propagates as the minimum") {
  const auto ctx = make_context(3);
  const OneVarSeries a(ctx, {1, 2, 3}, 10), b(ctx, {1, 1}, 5);
  CHECK((a * b).truncation() == 5);
  CHECK((a + ints(ctx, {1})).truncation() == 10);
  CHECK((a * b).truncated(1).coefficient(2) == 0);
}

TEST_CASE("Weierstrass preparation examples") {
  const auto ctx = make_context(3);
  auto w = weierstrass_prepare(ints(ctx, {3, 1}));
  CHECK(w.mu == 0);
  CHECK(w.distinguished == ints(ctx, {3, 1}));
  CHECK(w.unit.truncated(0) == ints(ctx, {1}).truncated(0));
  CHECK(w.unit.degree() == 0);

  w = weierstrass_prepare(ints(ctx, {2}));
  CHECK(w.lambda() == 0);
  CHECK(w.unit.coefficient(0) == 2);

  const auto f = ints(ctx, {3, 4, 1});
  w = weierstrass_prepare(f);
  CHECK(w.lambda() == 1);
  CHECK(w.distinguished == ints(ctx, {3, 1}));
  CHECK((w.unit * w.distinguished).truncated(*w.unit.truncation()) == f.truncated(*w.unit.truncation()));

  w = weierstrass_prepare(ints(ctx, {9, 27, 9, 3}));
  CHECK(w.mu == 1);
  CHECK(w.lambda() == 3);
  CHECK_THROWS_AS(weierstrass_prepare(OneVarSeries(ctx)), NotAUnitSeries);
}

TEST_CASE("Weierstrass degree matches the Newton polygon oracle") {
  const auto ctx = make_context(3);
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 25; ++trial) {
    std::vector<long> c(6);
    for (auto& x : c) x = static_cast<long>(rng() % 61) - 30;
    if (c.back() == 0) c.back() = 1;
    const auto f = ints(ctx, c);
    const auto [mu, lambda] = oracle::mu_lambda(coefficient_valuations(f));
    const auto w = weierstrass_prepare(f);
    CHECK(w.mu == mu);
    CHECK(w.lambda() == lambda);
    // Roots of the distinguished polynomial are the roots of f in the open disc.
    const auto slopes = oracle::newton_slopes(coefficient_valuations(w.distinguished));
    const auto all = oracle::newton_slopes(coefficient_valuations(f));
    std::vector<oracle::Q> positive;
    for (const auto& s : all)
      if (s > oracle::Q(0)) positive.push_back(s);
    CHECK(slopes == positive);
    const int d = *w.unit.truncation();
    mpz_class pm;
    mpz_ui_pow_ui(pm.get_mpz_t(), 3, static_cast<unsigned long>(mu));
    CHECK((w.unit * w.distinguished).scaled(pm).truncated(d) == f.truncated(d));
  }
}
