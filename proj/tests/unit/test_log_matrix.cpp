#include <doctest.h>

#include "../support/oracles.hpp"
#include "iwasawa/error.hpp"
#include "iwasawa/log_matrix.hpp"

using namespace iwasawa;

namespace {

OneVarSeries ints(const ContextPtr& ctx, std::vector<long> c) { return OneVarSeries::from_integers(ctx, c); }

Valuation q(const oracle::Q& x) { return Valuation(x.numerator(), x.denominator()); }

}  // namespace

TEST_CASE("c_matrix examples and validation") {
  const auto ctx = make_context(3);
  auto c = c_matrix(ctx, 3, 1);
  CHECK(c.entries[0] == ints(ctx, {3}));
  CHECK(c.entries[1] == ints(ctx, {1}));
  CHECK(c.entries[2] == phi_poly(ctx, 1));
  CHECK(c.entries[3].is_zero());
  c = c_matrix(ctx, -3, 2);
  CHECK(c.entries[0] == ints(ctx, {-3}));
  CHECK(c.entries[2] == phi_poly(ctx, 2));
  const auto c5 = make_context(5);
  CHECK(c_matrix(c5, 5, 1).entries[2] == phi_poly(c5, 1));
  CHECK_THROWS_AS(c_matrix(ctx, 4, 1), InvalidInput);
  CHECK_THROWS_AS(c_matrix(ctx, 0, 1), InvalidInput);
}

TEST_CASE("h_row examples and recursion") {
  const auto ctx = make_context(3);
  const long ap = 3;
  const auto a = ints(ctx, {ap});
  auto h = h_row(ctx, ap, 1);
  CHECK(h.sharp == a);
  CHECK(h.flat == ints(ctx, {1}));
  h = h_row(ctx, ap, 2);
  CHECK(h.sharp == a * a + phi_poly(ctx, 1));
  CHECK(h.flat == a);
  h = h_row(ctx, ap, 3);
  CHECK(h.sharp == a * a * a + a * phi_poly(ctx, 1) + a * phi_poly(ctx, 2));
  CHECK(h.flat == a * a + phi_poly(ctx, 2));
  for (int n = 3; n <= 8; ++n) {
    const auto h0 = h_row(ctx, ap, n), h1 = h_row(ctx, ap, n - 1), h2 = h_row(ctx, ap, n - 2);
    CHECK(h0.sharp == a * h1.sharp + phi_poly(ctx, n - 1) * h2.sharp);
    CHECK(h0.flat == a * h1.flat + phi_poly(ctx, n - 1) * h2.flat);
  }
}

TEST_CASE("h_valuation examples") {
  const auto ctx = make_context(3);
  CHECK(h_valuation_direct(ctx, 3, 1) == ValuationPair{Valuation(1), Valuation(0)});
  CHECK(h_valuation_direct(ctx, 3, 2) == ValuationPair{Valuation(1, 3), Valuation(1)});
  CHECK(h_valuation_direct(ctx, 3, 4) == ValuationPair{Valuation(1, 3) + Valuation(1, 27), Valuation(1) + Valuation(1, 9)});
  CHECK(h_valuation_formula(3, 5).first == Valuation(1) + Valuation(1, 3) + Valuation(1, 27));
  CHECK(h_valuation_formula(3, 6) ==
        ValuationPair{Valuation(1, 3) + Valuation(1, 27) + Valuation(1, 243), Valuation(1) + Valuation(1, 9) + Valuation(1, 81)});
  CHECK(h_valuation_formula(7, 1) == ValuationPair{Valuation(1), Valuation(0)});
}

TEST_CASE("formula agrees with the independent closed form") {
  for (unsigned p : {3u, 5u, 7u})
    for (int n = 1; n <= 8; ++n) {
      const auto [s, f] = oracle::h_closed_form(p, n);
      CHECK(h_valuation_formula(p, n) == ValuationPair{q(s), q(f)});
    }
}

TEST_CASE("direct valuations agree with the minimum-cost tiling oracle") {
  // The tiling oracle expands the recursion term by term; when the cheapest
  // tiling is unique its cost is the valuation of H at eta.
  for (unsigned p : {3u, 5u}) {
    const auto ctx = make_context(p);
    for (long ap : {static_cast<long>(p), -static_cast<long>(p)}) {
      for (int n = 1; n <= 6; ++n) {
        const auto [sharp, flat] = oracle::h_tiling(p, n);
        const auto direct = h_valuation_direct(ctx, ap, n);
        if (sharp.minimisers == 1) CHECK(direct.first == q(sharp.cost));
        if (flat.minimisers == 1) CHECK(direct.second == q(flat.cost));
      }
    }
  }
}

TEST_CASE("conventions: tags, candidates and resolution scores") {
  CHECK(Convention::all().size() == 8);
  CHECK(kDefaultConvention.tag() == "desc-fwd-id");
  const auto ctx = make_context(3);
  const auto res = resolve_convention(ctx, 3, 4);
  CHECK(res.scores.size() == 8);
  CHECK(res.chosen.tag() == "desc-fwd-id");
}

TEST_CASE("mlog_truncation examples") {
  const auto ctx = make_context(3);
  auto m = mlog_truncation(ctx, 3, 0);
  CHECK(m.shift == 1);
  CHECK(m.entries[0].is_zero());
  CHECK(m.entries[1] == ints(ctx, {-1}));
  CHECK(m.entries[2] == ints(ctx, {3}));
  CHECK(m.entries[3] == ints(ctx, {3}));
  // Determinant: det(pA)^(k+1) prod det C'_j = p^(k+1) prod Phi_j, before scaling.
  for (int k = 1; k <= 3; ++k) {
    m = mlog_truncation(ctx, 3, k);
    auto det = m.entries[0] * m.entries[3] - m.entries[1] * m.entries[2];
    auto expect = ints(ctx, {1});
    for (int j = 1; j <= k; ++j) expect = expect * phi_poly(ctx, j);
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 3, static_cast<unsigned long>(k + 1));
    mpz_class back;
    mpz_ui_pow_ui(back.get_mpz_t(), 3, static_cast<unsigned long>(2 * (k + 1 - m.shift)));
    CHECK(det.scaled(back) == expect.scaled(scale));
  }
}

TEST_CASE("truncations stabilize exactly at eta under the -Phi sign") {
  const auto ctx = make_context(3);
  for (int n = 1; n <= 3; ++n) {
    for (int k = n; k < n + 3; ++k) {
      const auto d = difference(mlog_truncation_at(ctx, 3, k + 1, n, 1), mlog_truncation_at(ctx, 3, k, n, 1));
      for (const auto& v : scaled_valuations(d)) CHECK(v.is_infinite());
      const auto e = difference(mlog_truncation_at(ctx, 3, k + 1, n, 1, +1), mlog_truncation_at(ctx, 3, k, n, 1, +1));
      bool some_finite = false;
      for (const auto& v : scaled_valuations(e)) some_finite = some_finite || !v.is_infinite();
      CHECK(some_finite);
    }
    // Evaluating the polynomial truncation agrees with evaluating factor by factor.
    const auto a = evaluate(mlog_truncation(ctx, 3, n + 1), n, 1);
    const auto b = mlog_truncation_at(ctx, 3, n + 1, n, 1);
    for (const auto& v : scaled_valuations(difference(a, b))) CHECK(v.is_infinite());
  }
}
