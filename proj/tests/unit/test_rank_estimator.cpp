#include <doctest.h>

#include "../support/oracles.hpp"
#include "iwasawa/error.hpp"
#include "iwasawa/generators.hpp"
#include "iwasawa/rank_estimator.hpp"

using namespace iwasawa;

namespace {

ColemanScenario blank(const ContextPtr& ctx, long ap = 3) {
  ColemanScenario sc;
  sc.ctx = ctx;
  sc.ap = ap;
  return sc;
}

TwoVarSeries one(const ContextPtr& ctx) { return TwoVarSeries::constant(ctx, 1); }

}  // namespace

TEST_CASE("det_col examples, antisymmetry and bilinearity") {
  const auto ctx = make_context(3);
  auto sc = gen::scenario(ctx, 3, "sharp-unit");
  CHECK(det_col(sc, Sign::sharp, Sign::sharp) == one(ctx));
  CHECK(det_col(sc, Sign::flat, Sign::flat).is_zero());

  auto prop = blank(ctx);
  prop.at(Prime::p, Sign::sharp, 0) = TwoVarSeries::monomial(ctx, 1, 0);
  prop.at(Prime::q, Sign::flat, 0) = one(ctx);
  for (Prime pr : {Prime::p, Prime::q})
    for (Sign sg : {Sign::sharp, Sign::flat}) prop.at(pr, sg, 1) = prop.at(pr, sg, 0).scaled(2);
  CHECK_THROWS_AS(prop.validate(), TorsionAssumptionViolated);

  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    auto a = gen::scenario(ctx, 3, "random", seed);
    auto b = a;
    for (Prime pr : {Prime::p, Prime::q})
      for (Sign sg : {Sign::sharp, Sign::flat}) std::swap(b.at(pr, sg, 0), b.at(pr, sg, 1));
    auto c = a;
    for (Prime pr : {Prime::p, Prime::q})
      for (Sign sg : {Sign::sharp, Sign::flat}) c.at(pr, sg, 0) = c.at(pr, sg, 0).scaled(5) + c.at(pr, sg, 1);
    for (Sign x : {Sign::sharp, Sign::flat})
      for (Sign y : {Sign::sharp, Sign::flat}) {
        CHECK(det_col(b, x, y) == -det_col(a, x, y));
        CHECK(det_col(c, x, y) == det_col(a, x, y).scaled(5));
      }
  }
}

TEST_CASE("underline_col_det_at examples") {
  const auto ctx = make_context(3);
  const CharacterClass t{1, 1, 1};
  auto sc = gen::scenario(ctx, 3, "sharp-unit");
  CHECK(cyclo_valuation(underline_col_det_at(sc, t)) == Valuation(2));

  sc = gen::scenario(ctx, 3, "phi1");
  CHECK(zero_test(underline_col_det_at(sc, t)).numerically_zero);

  auto flat = blank(ctx);
  flat.at(Prime::p, Sign::flat, 0) = one(ctx);
  flat.at(Prime::q, Sign::flat, 1) = one(ctx);
  flat.validate();
  for (const CharacterClass& th : {CharacterClass{2, 1, 1}, CharacterClass{2, 2, 1}, CharacterClass{1, 2, 2}}) {
    const auto expect = h_valuation_direct(ctx, 3, th.r).second + h_valuation_direct(ctx, 3, th.s).second;
    CHECK(cyclo_valuation(underline_col_det_at(flat, th)) == expect);
  }
  CHECK_THROWS_AS(underline_col_det_at(sc, CharacterClass{1, 0, 0}), InvalidInput);
}

TEST_CASE("summand valuations and distinctness") {
  const auto ctx = make_context(3);
  const auto sc = gen::scenario(ctx, 3, "unit-dets");
  const CharacterClass t{4, 1, 1};
  const auto v = summand_valuations(sc, t);
  const auto h4 = h_valuation_direct(ctx, 3, 4), h1 = h_valuation_direct(ctx, 3, 1);
  CHECK(v.summands[0] == h4.first + h1.first);
  CHECK(v.summands[1] == h4.first + h1.second);
  CHECK(v.summands[2] == h4.second + h1.first);
  CHECK(v.summands[3] == h4.second + h1.second);

  const auto only = summand_valuations(gen::scenario(ctx, 3, "sharp-unit"), t);
  CHECK(only.distinct);
  CHECK_FALSE(only.summands[1].has_value());

  // det(sharp,sharp) = det(flat,flat) = 1, mixed determinants 0.
  auto diag = blank(ctx);
  diag.at(Prime::p, Sign::sharp, 0) = one(ctx);
  diag.at(Prime::p, Sign::flat, 1) = one(ctx);
  diag.at(Prime::q, Sign::sharp, 1) = one(ctx);
  diag.at(Prime::q, Sign::flat, 0) = -one(ctx);
  diag.validate();
  CHECK(det_col(diag, Sign::sharp, Sign::sharp) == one(ctx));
  CHECK(det_col(diag, Sign::flat, Sign::flat) == one(ctx));
  CHECK(det_col(diag, Sign::sharp, Sign::flat).is_zero());
  CHECK(det_col(diag, Sign::flat, Sign::sharp).is_zero());
  for (int r = 1; r <= 3; ++r) {
    const auto v2 = summand_valuations(diag, {r, r, 1});
    const auto h = h_valuation_direct(ctx, 3, r);
    CHECK(v2.summands[0] == h.first + h.first);
    CHECK(v2.summands[3] == h.second + h.second);
    CHECK(v2.distinct == !(h.first == h.second));
  }
}

TEST_CASE("vanishing_test examples") {
  const auto ctx = make_context(3);
  const auto unit = gen::scenario(ctx, 3, "sharp-unit");
  for (const auto& t : enumerate_classes(3, 2))
    if (!t.boundary()) CHECK(vanishing_test(unit, t).verdict == Verdict::nonvanishing);
  const auto phi = gen::scenario(ctx, 3, "phi1");
  for (std::int64_t s = 1; s <= 2; ++s) {
    const auto v = vanishing_test(phi, s == 1 ? CharacterClass{1, 1, 1} : CharacterClass{1, 2, 1});
    CHECK(v.verdict == Verdict::vanishing_rank_1);
    CHECK(v.rank() == 1);
  }
  CHECK(vanishing_test(phi, {2, 1, 1}).verdict == Verdict::nonvanishing);
}

TEST_CASE("count_xi and cumulative_bound") {
  const auto ctx = make_context(3);
  const auto unit = gen::scenario(ctx, 3, "sharp-unit");
  for (int n = 1; n <= 3; ++n) CHECK(count_xi(unit, n).empty());
  auto rep = cumulative_bound(unit, 3);
  CHECK(rep.max_c_n == 0);
  CHECK(rep.growth_constant == Valuation::Rational(0));
  for (const auto& l : rep.levels) CHECK(l.cumulative == 0);

  const auto phi = gen::scenario(ctx, 3, "phi1");
  const auto xi1 = count_xi(phi, 1);
  CHECK(xi1 == std::vector<CharacterClass>{{1, 1, 1}, {1, 1, 2}});
  rep = cumulative_bound(phi, 2);
  CHECK(rep.levels[0].cumulative == 8);
  CHECK(rep.levels[0].boundary.size() == 2);
  for (const auto& l : rep.levels) {
    CHECK(l.jump_bound <= l.jump_cap);
    const auto fresh = new_classes(3, l.n);
    for (const auto& v : l.xi) CHECK(std::find(fresh.begin(), fresh.end(), v.theta) != fresh.end());
  }
}

TEST_CASE("results do not depend on the thread count") {
  const auto ctx = make_context(3);
  const auto sc = gen::scenario(ctx, 3, "random", 7);
  const auto a = cumulative_bound(sc, 2, 1), b = cumulative_bound(sc, 2, 4);
  REQUIRE(a.levels.size() == b.levels.size());
  for (std::size_t i = 0; i < a.levels.size(); ++i) {
    CHECK(a.levels[i].cumulative == b.levels[i].cumulative);
    REQUIRE(a.levels[i].xi.size() == b.levels[i].xi.size());
    for (std::size_t j = 0; j < a.levels[i].xi.size(); ++j) CHECK(a.levels[i].xi[j].theta == b.levels[i].xi[j].theta);
  }
}
