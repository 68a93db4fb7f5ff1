#include <doctest.h>

#include "../support/oracles.hpp"
#include "iwasawa/error.hpp"
#include "iwasawa/generators.hpp"
#include "iwasawa/module_ranks.hpp"

using namespace iwasawa;

namespace {

LambdaPresentation cyclic(const ContextPtr& ctx, const TwoVarSeries& f) { return {ctx, 1, {{f}}}; }

}  // namespace

TEST_CASE("coinvariant ranks of the basic modules") {
  const auto ctx = make_context(3);
  const LambdaPresentation free{ctx, 1, {}};
  const auto tp = cyclic(ctx, TwoVarSeries::monomial(ctx, 1, 0));
  const auto torsion = cyclic(ctx, TwoVarSeries::constant(ctx, 3));
  const auto shifted = cyclic(ctx, TwoVarSeries::monomial(ctx, 1, 0) - TwoVarSeries::constant(ctx, 3));
  for (int n = 0; n <= 2; ++n) {
    CHECK(coinv_rank_direct(free, n).rank == oracle::rank_free(3, n));
    CHECK(coinv_rank_charsum(free, n).rank == oracle::rank_free(3, n));
    CHECK(coinv_rank_direct(tp, n).rank == oracle::rank_mod_tp(3, n));
    CHECK(coinv_rank_charsum(tp, n).rank == oracle::rank_mod_tp(3, n));
    CHECK(coinv_rank_direct(torsion, n).rank == 0);
    CHECK(coinv_rank_charsum(torsion, n).rank == 0);
    CHECK(coinv_rank_direct(shifted, n).rank == 0);
    CHECK(coinv_rank_charsum(shifted, n).rank == 0);
  }
}

TEST_CASE("oracle agreement on random single-relation presentations") {
  const auto ctx = make_context(3);
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto m = gen::random_cyclic_module(ctx, seed);
    for (int n = 1; n <= 2; ++n) CHECK(coinv_rank_direct(m, n).rank == coinv_rank_charsum(m, n).rank);
  }
}

TEST_CASE("additivity over direct sums and multi-generator presentations") {
  const auto ctx = make_context(3);
  const LambdaPresentation free{ctx, 1, {}};
  const auto tq = cyclic(ctx, TwoVarSeries::monomial(ctx, 0, 1));
  const auto sum = direct_sum(free, tq);
  CHECK(sum.generators == 2);
  for (int n = 1; n <= 2; ++n) {
    CHECK(coinv_rank_direct(sum, n).rank == oracle::rank_free(3, n) + oracle::rank_mod_tp(3, n));
    CHECK(coinv_rank_charsum(sum, n).rank == oracle::rank_free(3, n) + oracle::rank_mod_tp(3, n));
  }
  // The second relation kills e2, leaving Lambda / (T_p).
  const LambdaPresentation two{ctx, 2,
                               {{TwoVarSeries::monomial(ctx, 1, 0), TwoVarSeries::monomial(ctx, 0, 1)},
                                {TwoVarSeries::constant(ctx, 0), TwoVarSeries::constant(ctx, 1)}}};
  for (int n = 1; n <= 2; ++n) {
    CHECK(coinv_rank_direct(two, n).rank == oracle::rank_mod_tp(3, n));
    CHECK(coinv_rank_charsum(two, n).rank == oracle::rank_mod_tp(3, n));
  }
}

TEST_CASE("validation and caps") {
  const auto ctx = make_context(3);
  const LambdaPresentation bad{ctx, 2, {{TwoVarSeries::constant(ctx, 1)}}};
  CHECK_THROWS_AS(bad.validate(), InvalidInput);
  const LambdaPresentation free{ctx, 1, {}};
  CHECK_THROWS_AS(coinv_rank_direct(free, 5), SizeCapExceeded);
  CHECK(coinv_rank_charsum(free, 5).rank == oracle::rank_free(3, 5));
  const auto truncated = cyclic(ctx, TwoVarSeries(ctx, std::make_pair(1, 1)) + TwoVarSeries::monomial(ctx, 1, 0));
  CHECK_THROWS_AS(coinv_rank_direct(truncated, 2), TruncationInsufficient);
}

TEST_CASE("harris_fit examples") {
  for (unsigned p : {3u, 5u}) {
    const auto ctx = make_context(p);
    const LambdaPresentation free{ctx, 1, {}};
    auto fit = harris_fit(free, 2);
    CHECK(fit.r_numerator == 1);
    CHECK(fit.r_denominator == 1);
    CHECK(fit.residual == Valuation::Rational(0));
    const auto tp = cyclic(ctx, TwoVarSeries::monomial(ctx, 1, 0));
    fit = harris_fit(tp, 2);
    CHECK(fit.r_numerator == 0);
    CHECK(fit.residual == Valuation::Rational(1));
    for (const auto& [n, r] : fit.ranks) CHECK(r == oracle::rank_mod_tp(p, n));
    fit = harris_fit(direct_sum(free, cyclic(ctx, TwoVarSeries::monomial(ctx, 0, 1))), 2);
    CHECK(fit.r_numerator == 1);
    CHECK(fit.r_denominator == 1);
  }
}
