#include "iwasawa/rank_estimator.hpp"

#include <algorithm>

#include "iwasawa/error.hpp"
#include "iwasawa/parallel.hpp"

namespace iwasawa {

namespace {

constexpr std::array<Sign, 2> kSigns{Sign::sharp, Sign::flat};

const CyclotomicNumber& pick(const HValues& h, Sign s) { return s == Sign::sharp ? h.sharp : h.flat; }

struct Evaluated {
  CharacterPoint w;
  HValues hp;
  HValues hq;
};

Evaluated prepare(const ColemanScenario& sc, const CharacterClass& theta) {
  if (theta.boundary()) {
    throw InvalidInput("class " + theta.to_string() + " has a trivial coordinate; the four-term formula needs r, s >= 1");
  }
  const CharacterPoint w = realize(sc.ctx->prime(), theta);
  return {w, h_row_at(sc.ctx, sc.ap, theta.r, w.level, w.k1), h_row_at(sc.ctx, sc.ap, theta.s, w.level, w.k2)};
}

bool vector_zero(const CyclotomicNumber& a, const CyclotomicNumber& b, bool& sensitive) {
  const ZeroTest za = zero_test(a), zb = zero_test(b);
  sensitive = sensitive || za.precision_sensitive || zb.precision_sensitive;
  return za.numerically_zero && zb.numerically_zero;
}

}  // namespace

const TwoVarSeries& ColemanScenario::at(Prime pr, Sign sg, int cls) const {
  const auto& slot = col[static_cast<int>(pr)][static_cast<int>(sg)][cls];
  if (!slot) throw InvalidInput("scenario entry missing; call validate() first");
  return *slot;
}

TwoVarSeries& ColemanScenario::at(Prime pr, Sign sg, int cls) {
  auto& slot = col[static_cast<int>(pr)][static_cast<int>(sg)][cls];
  if (!slot) slot.emplace(ctx);
  return *slot;
}

void ColemanScenario::validate() {
  if (!ctx) throw InvalidInput("scenario without a context");
  check_ap(ctx->prime(), ap);
  for (auto& by_prime : col) {
    for (auto& by_sign : by_prime) {
      for (auto& slot : by_sign) {
        if (!slot) slot.emplace(ctx);
        if (!(*slot->context() == *ctx)) throw InvalidInput("scenario series with a different p or precision");
      }
    }
  }
  for (Sign a : kSigns) {
    for (Sign b : kSigns) {
      if (!det_col(*this, a, b).is_zero()) return;
    }
  }
  throw TorsionAssumptionViolated("all four Coleman determinants vanish identically");
}

TwoVarSeries det_col(const ColemanScenario& sc, Sign a, Sign b) {
  return sc.at(Prime::p, a, 0) * sc.at(Prime::q, b, 1) - sc.at(Prime::p, a, 1) * sc.at(Prime::q, b, 0);
}

std::array<std::array<CyclotomicNumber, 2>, 2> underline_col_values(const ColemanScenario& sc,
                                                                    const CharacterClass& theta) {
  const Evaluated ev = prepare(sc, theta);
  auto value = [&](Prime pr, int cls) {
    const HValues& h = pr == Prime::p ? ev.hp : ev.hq;
    CyclotomicNumber acc(sc.ctx, ev.w.level);
    for (Sign sg : kSigns) acc += pick(h, sg) * eval_at_point(sc.at(pr, sg, cls), ev.w);
    // Translation by the other prime's generator, inverted.
    if (sc.twist) acc = acc.times_zeta_power(pr == Prime::p ? -ev.w.k2 : -ev.w.k1);
    return acc;
  };
  return {{{value(Prime::p, 0), value(Prime::q, 0)}, {value(Prime::p, 1), value(Prime::q, 1)}}};
}

CyclotomicNumber underline_col_det_at(const ColemanScenario& sc, const CharacterClass& theta) {
  const Evaluated ev = prepare(sc, theta);
  CyclotomicNumber acc(sc.ctx, ev.w.level);
  for (Sign a : kSigns) {
    for (Sign b : kSigns) acc += pick(ev.hp, a) * pick(ev.hq, b) * eval_at_point(det_col(sc, a, b), ev.w);
  }
  if (sc.twist) acc = acc.times_zeta_power(-ev.w.k1 - ev.w.k2);
  return acc;
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::nonvanishing: return "nonvanishing";
    case Verdict::vanishing_rank_1: return "vanishing_rank_1";
    case Verdict::vanishing_rank_2: return "vanishing_rank_2";
    case Verdict::indeterminate: return "indeterminate";
  }
  return "?";
}

int VanishingVerdict::rank() const {
  switch (verdict) {
    case Verdict::nonvanishing: return 0;
    case Verdict::vanishing_rank_1: return 1;
    default: return 2;
  }
}

VanishingVerdict summand_valuations(const ColemanScenario& sc, const CharacterClass& theta) {
  const Evaluated ev = prepare(sc, theta);
  VanishingVerdict out;
  out.theta = theta;
  int idx = 0;
  for (Sign a : kSigns) {
    for (Sign b : kSigns) {
      const ZeroTest z = zero_test(eval_at_point(det_col(sc, a, b), ev.w));
      out.precision_sensitive = out.precision_sensitive || z.precision_sensitive;
      if (!z.numerically_zero) {
        out.summands[idx] = valuation_by_uniformizer(pick(ev.hp, a)) + valuation_by_uniformizer(pick(ev.hq, b)) +
                            z.valuation;
      }
      ++idx;
    }
  }
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      if (out.summands[i] && out.summands[j] && *out.summands[i] == *out.summands[j]) out.distinct = false;
    }
  }
  return out;
}

VanishingVerdict vanishing_test(const ColemanScenario& sc, const CharacterClass& theta) {
  VanishingVerdict out = summand_valuations(sc, theta);
  const ZeroTest total = zero_test(underline_col_det_at(sc, theta));
  out.precision_sensitive = out.precision_sensitive || total.precision_sensitive;
  if (!total.numerically_zero) {
    out.total = total.valuation;
    out.verdict = Verdict::nonvanishing;
    return out;
  }
  if (!total.exactly_zero) {
    // Below the guard but not provably zero: counted pessimistically.
    out.verdict = Verdict::indeterminate;
    out.precision_sensitive = true;
    return out;
  }
  const auto u = underline_col_values(sc, theta);
  const bool v1 = vector_zero(u[0][0], u[0][1], out.precision_sensitive);
  const bool v2 = vector_zero(u[1][0], u[1][1], out.precision_sensitive);
  out.verdict = v1 && v2 ? Verdict::vanishing_rank_2 : Verdict::vanishing_rank_1;
  return out;
}

namespace {

std::vector<CharacterClass> interior_new_classes(unsigned p, int n, std::vector<CharacterClass>* boundary) {
  std::vector<CharacterClass> inner;
  for (const auto& c : new_classes(p, n)) {
    if (c.boundary()) {
      if (boundary) boundary->push_back(c);
    } else {
      inner.push_back(c);
    }
  }
  return inner;
}

}  // namespace

std::vector<CharacterClass> count_xi(const ColemanScenario& sc, int n, unsigned threads) {
  if (n < 1) throw InvalidInput("count_xi needs n >= 1");
  const auto classes = interior_new_classes(sc.ctx->prime(), n, nullptr);
  const auto verdicts =
      ordered_map(classes.size(), threads, [&](std::size_t i) { return vanishing_test(sc, classes[i]); });
  std::vector<CharacterClass> xi;
  for (const auto& v : verdicts) {
    if (v.verdict != Verdict::nonvanishing) xi.push_back(v.theta);
  }
  return xi;
}

RankReport cumulative_bound(const ColemanScenario& sc, int n_max, unsigned threads) {
  if (n_max < 1) throw InvalidInput("cumulative_bound needs n_max >= 1");
  const unsigned p = sc.ctx->prime();
  RankReport rep{p, sc.ap, sc.ctx->precision(), sc.twist, {}, 0, 0};
  std::int64_t running = 0;
  for (int n = 1; n <= n_max; ++n) {
    LevelReport lv;
    lv.n = n;
    const auto classes = interior_new_classes(p, n, &lv.boundary);
    auto verdicts =
        ordered_map(classes.size(), threads, [&](std::size_t i) { return vanishing_test(sc, classes[i]); });
    for (auto& v : verdicts) {
      lv.precision_sensitive = lv.precision_sensitive || v.precision_sensitive;
      if (v.verdict == Verdict::nonvanishing) continue;
      if (v.verdict == Verdict::indeterminate) ++lv.indeterminate;
      lv.jump_bound += 2 * class_degree(p, v.theta);
      lv.xi.push_back(std::move(v));
    }
    lv.c_n = static_cast<std::int64_t>(lv.xi.size());
    lv.jump_cap = 2 * lv.c_n * totient_pow(p, n);
    running += lv.jump_bound;
    lv.cumulative = running;
    rep.max_c_n = std::max(rep.max_c_n, lv.c_n);
    rep.growth_constant = std::max(rep.growth_constant, Valuation::Rational(running, ipow(p, n)));
    rep.levels.push_back(std::move(lv));
  }
  return rep;
}

}  // namespace iwasawa
