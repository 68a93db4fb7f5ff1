#include "iwasawa/generators.hpp"

#include <random>

#include "iwasawa/error.hpp"

namespace iwasawa::gen {

namespace {

long draw(std::mt19937_64& rng, long lo, long hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo + 1);
  return lo + static_cast<long>(rng() % span);
}

}  // namespace

TwoVarSeries random_polynomial(const ContextPtr& ctx, std::uint64_t seed, int deg, long bound) {
  std::mt19937_64 rng(seed);
  TwoVarSeries f(ctx);
  for (int i = 0; i <= deg; ++i) {
    for (int j = 0; j <= deg; ++j) f.set(i, j, draw(rng, -bound, bound));
  }
  if (f.is_zero()) f.set(0, 0, 1);
  return f;
}

LambdaPresentation random_cyclic_module(const ContextPtr& ctx, std::uint64_t seed, int deg) {
  return {ctx, 1, {{random_polynomial(ctx, seed, deg)}}};
}

LambdaPresentation random_torsion_module(const ContextPtr& ctx, std::uint64_t seed) {
  std::mt19937_64 rng(seed ^ 0x2545f4914f6cdd1dULL);
  // Factors vanishing on whole lines of the torus, so ranks grow like p^n.
  const TwoVarSeries tp = TwoVarSeries::monomial(ctx, 1, 0), tq = TwoVarSeries::monomial(ctx, 0, 1);
  const std::vector<TwoVarSeries> factors{tp, tq, TwoVarSeries::in_tp(phi_poly(ctx, 1)),
                                          TwoVarSeries::in_tq(phi_poly(ctx, 1)), tp * tq};
  const TwoVarSeries h = factors[static_cast<std::size_t>(seed % factors.size())];
  return {ctx, 1, {{random_polynomial(ctx, rng(), 2) * h}}};
}

TwoVarSeries random_profile_series(const ContextPtr& ctx, std::uint64_t seed, long* a, long* b, long* c) {
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  const long p = ctx->prime();
  const long ea = draw(rng, 0, 1), eb = draw(rng, 0, 2), ec = draw(rng, 0, 2);
  TwoVarSeries u = random_polynomial(ctx, rng(), 2, 4);
  u.set(0, 0, draw(rng, 1, p - 1));
  const TwoVarSeries g = random_polynomial(ctx, rng(), 2, 4);
  mpz_class pa;
  mpz_ui_pow_ui(pa.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(ea));
  TwoVarSeries f = TwoVarSeries::monomial(ctx, static_cast<int>(eb), static_cast<int>(ec), pa) * u;
  f += g.scaled(pa * p);
  if (a) *a = ea;
  if (b) *b = eb;
  if (c) *c = ec;
  return f;
}

ColemanScenario scenario(const ContextPtr& ctx, long ap, const std::string& kind, std::uint64_t seed) {
  ColemanScenario sc;
  sc.ctx = ctx;
  sc.ap = ap;
  const TwoVarSeries one = TwoVarSeries::constant(ctx, 1);
  if (kind == "sharp-unit") {
    sc.at(Prime::p, Sign::sharp, 0) = one;
    sc.at(Prime::q, Sign::sharp, 1) = one;
  } else if (kind == "phi1") {
    sc.at(Prime::p, Sign::sharp, 0) = TwoVarSeries::in_tp(phi_poly(ctx, 1));
    sc.at(Prime::q, Sign::sharp, 1) = one;
  } else if (kind == "unit-dets") {
    // c1 = (1, 1 | 0, 0), c2 = (0, 0 | 1, 1): every det_col equals 1.
    sc.at(Prime::p, Sign::sharp, 0) = one;
    sc.at(Prime::p, Sign::flat, 0) = one;
    sc.at(Prime::q, Sign::sharp, 1) = one;
    sc.at(Prime::q, Sign::flat, 1) = one;
  } else if (kind == "random") {
    std::mt19937_64 rng(seed);
    for (int cls = 0; cls < 2; ++cls) {
      for (Prime pr : {Prime::p, Prime::q}) {
        for (Sign sg : {Sign::sharp, Sign::flat}) sc.at(pr, sg, cls) = random_polynomial(ctx, rng(), 2, 5);
      }
    }
  } else {
    throw InvalidInput("unknown scenario kind '" + kind + "' (sharp-unit, phi1, unit-dets, random)");
  }
  sc.validate();
  return sc;
}

}  // namespace iwasawa::gen
