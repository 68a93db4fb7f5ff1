#include "iwasawa/log_matrix.hpp"

#include <algorithm>

#include "iwasawa/error.hpp"

namespace iwasawa {

namespace {

template <class T>
std::array<T, 4> mat_mul(const std::array<T, 4>& a, const std::array<T, 4>& b) {
  return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
          a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
}

// Indices of the factors in left-to-right order for the given convention.
std::vector<int> factor_indices(int n, const Convention& conv) {
  std::vector<int> idx;
  for (int j = 1; j <= n; ++j) idx.push_back(conv.index == Convention::Index::forward ? j : n + 1 - j);
  if (conv.order == Convention::Order::descending) std::reverse(idx.begin(), idx.end());
  return idx;
}

// Psi_(p^j)(zeta^k) in the ring at `level`, i.e. Phi_j(zeta^k - 1).
CyclotomicNumber phi_at(const ContextPtr& ctx, int j, int level, std::int64_t k) {
  const std::int64_t block = ipow(ctx->prime(), j - 1);
  poly::Coeffs acc;
  const std::int64_t order = ipow(ctx->prime(), level);
  for (unsigned t = 0; t < ctx->prime(); ++t) {
    std::int64_t e = (k % order) * ((static_cast<std::int64_t>(t) * block) % order) % order;
    if (e < 0) e += order;
    if (acc.size() <= static_cast<std::size_t>(e)) acc.resize(e + 1, 0);
    acc[e] += 1;
  }
  return CyclotomicNumber(ctx, level, acc);
}

std::array<CyclotomicNumber, 4> c_at(const ContextPtr& ctx, long ap, int j, int level, std::int64_t k, int sign) {
  CyclotomicNumber phi = phi_at(ctx, j, level, k);
  if (sign < 0) phi = -phi;
  return {CyclotomicNumber::constant(ctx, level, ap), CyclotomicNumber::constant(ctx, level, 1), std::move(phi),
          CyclotomicNumber(ctx, level)};
}

std::array<CyclotomicNumber, 4> identity_at(const ContextPtr& ctx, int level) {
  return {CyclotomicNumber::constant(ctx, level, 1), CyclotomicNumber(ctx, level), CyclotomicNumber(ctx, level),
          CyclotomicNumber::constant(ctx, level, 1)};
}

PolyMatrix constant_matrix(const ContextPtr& ctx, long a, long b, long c, long d) {
  return {OneVarSeries::from_integers(ctx, {a}), OneVarSeries::from_integers(ctx, {b}),
          OneVarSeries::from_integers(ctx, {c}), OneVarSeries::from_integers(ctx, {d})};
}

Valuation rational_sum(unsigned p, int first_exponent, int count, int step) {
  Valuation::Rational s(0);
  for (int i = 0; i < count; ++i) s += Valuation::Rational(1, ipow(p, first_exponent + i * step));
  return Valuation(s);
}

}  // namespace

std::string Convention::tag() const {
  std::string t = order == Order::descending ? "desc" : "asc";
  t += index == Index::forward ? "-fwd" : "-rev";
  t += pairing == Pairing::identity ? "-id" : "-swap";
  return t;
}

std::vector<Convention> Convention::all() {
  std::vector<Convention> out;
  for (auto o : {Order::descending, Order::ascending}) {
    for (auto i : {Index::forward, Index::reversed}) {
      for (auto pr : {Pairing::identity, Pairing::swapped}) out.push_back({o, i, pr});
    }
  }
  return out;
}

void check_ap(unsigned p, long ap) {
  if (ap == 0 || ap % static_cast<long>(p) != 0) {
    throw InvalidInput("a_p must be a non-zero multiple of p (got a_p = " + std::to_string(ap) + ", p = " +
                       std::to_string(p) + ")");
  }
}

CMatrix c_matrix(ContextPtr ctx, long ap, int n) {
  check_ap(ctx->prime(), ap);
  if (n < 1) throw InvalidInput("C_n needs n >= 1");
  CMatrix m{n, ap, constant_matrix(ctx, ap, 1, 0, 0)};
  m.entries[2] = phi_poly(ctx, n);
  return m;
}

HRow h_row(ContextPtr ctx, long ap, int n, const Convention& conv) {
  check_ap(ctx->prime(), ap);
  if (n < 1) throw InvalidInput("h_row needs n >= 1");
  PolyMatrix prod = constant_matrix(ctx, 1, 0, 0, 1);
  for (int j : factor_indices(n, conv)) prod = mat_mul(prod, c_matrix(ctx, ap, j).entries);
  HRow row{n, prod[0], prod[1], conv};
  if (conv.pairing == Convention::Pairing::swapped) std::swap(row.sharp, row.flat);
  return row;
}

HValues h_row_at(ContextPtr ctx, long ap, int n, int level, std::int64_t k, const Convention& conv) {
  check_ap(ctx->prime(), ap);
  if (n < 1) throw InvalidInput("h_row needs n >= 1");
  auto prod = identity_at(ctx, level);
  for (int j : factor_indices(n, conv)) prod = mat_mul(prod, c_at(ctx, ap, j, level, k, +1));
  HValues v{prod[0], prod[1]};
  if (conv.pairing == Convention::Pairing::swapped) std::swap(v.sharp, v.flat);
  return v;
}

ValuationPair h_valuation_direct(ContextPtr ctx, long ap, int n, const Convention& conv) {
  const HValues v = h_row_at(ctx, ap, n, n, 1, conv);
  return {cyclo_valuation(v.sharp), cyclo_valuation(v.flat)};
}

ValuationPair h_valuation_formula(unsigned p, int n) {
  if (n < 1) throw InvalidInput("h_valuation_formula needs n >= 1");
  if (n % 2 == 1) {
    const int m = (n - 1) / 2;
    return {Valuation(1) + rational_sum(p, 1, m, 2), rational_sum(p, 2, m, 2)};
  }
  const int m = n / 2;
  return {rational_sum(p, 1, m, 2), Valuation(1) + rational_sum(p, 2, m - 1, 2)};
}

ConventionResolution resolve_convention(ContextPtr ctx, long ap, int n_max) {
  ConventionResolution res;
  for (const auto& conv : Convention::all()) {
    ConventionScore score{conv, {}};
    for (int n = 1; n <= n_max; ++n) {
      if (h_valuation_direct(ctx, ap, n, conv) == h_valuation_formula(ctx->prime(), n)) {
        score.matching_levels.push_back(n);
      }
    }
    res.scores.push_back(std::move(score));
  }
  const auto best = std::max_element(res.scores.begin(), res.scores.end(), [](const auto& a, const auto& b) {
    return a.matching_levels.size() < b.matching_levels.size();
  });
  res.chosen = best->convention;
  for (int n = 1; n <= n_max; ++n) {
    if (std::find(best->matching_levels.begin(), best->matching_levels.end(), n) == best->matching_levels.end()) {
      res.unresolved_levels.push_back(n);
    }
  }
  return res;
}

ScaledMatrix mlog_truncation(ContextPtr ctx, long ap, int k, int phi_sign) {
  check_ap(ctx->prime(), ap);
  if (k < 0) throw InvalidInput("mlog_truncation needs k >= 0");
  const long p = ctx->prime();
  const PolyMatrix a_int = constant_matrix(ctx, 0, -1, p, ap);  // p * A
  PolyMatrix prod = constant_matrix(ctx, 1, 0, 0, 1);
  for (int i = 0; i <= k; ++i) prod = mat_mul(prod, a_int);
  for (int j = k; j >= 1; --j) {
    PolyMatrix c = c_matrix(ctx, ap, j).entries;
    if (phi_sign < 0) c[2] = -c[2];
    prod = mat_mul(prod, c);
  }
  ScaledMatrix out{k + 1, std::move(prod)};
  // Canonical form: strip common factors of p from the shift.
  while (out.shift > 0) {
    bool divisible = true;
    for (const auto& e : out.entries) {
      for (const auto& c : e.coefficients()) divisible = divisible && mpz_divisible_ui_p(c.get_mpz_t(), p);
    }
    if (!divisible) break;
    for (auto& e : out.entries) {
      poly::Coeffs c = e.coefficients();
      for (auto& x : c) mpz_divexact_ui(x.get_mpz_t(), x.get_mpz_t(), p);
      e = OneVarSeries(ctx, std::move(c));
    }
    --out.shift;
  }
  return out;
}

ScaledValue mlog_truncation_at(ContextPtr ctx, long ap, int k, int level, std::int64_t root, int phi_sign) {
  check_ap(ctx->prime(), ap);
  if (k < 0) throw InvalidInput("mlog_truncation needs k >= 0");
  const long p = ctx->prime();
  const std::array<CyclotomicNumber, 4> a_int{CyclotomicNumber(ctx, level), CyclotomicNumber::constant(ctx, level, -1),
                                              CyclotomicNumber::constant(ctx, level, p),
                                              CyclotomicNumber::constant(ctx, level, ap)};
  auto prod = identity_at(ctx, level);
  for (int i = 0; i <= k; ++i) prod = mat_mul(prod, a_int);
  for (int j = k; j >= 1; --j) prod = mat_mul(prod, c_at(ctx, ap, j, level, root, phi_sign));
  return {k + 1, std::move(prod)};
}

ScaledValue evaluate(const ScaledMatrix& m, int level, std::int64_t root) {
  return {m.shift,
          {eval_at_root(m.entries[0], level, root), eval_at_root(m.entries[1], level, root),
           eval_at_root(m.entries[2], level, root), eval_at_root(m.entries[3], level, root)}};
}

std::array<Valuation, 4> scaled_valuations(const ScaledValue& v) {
  std::array<Valuation, 4> out;
  for (int i = 0; i < 4; ++i) {
    const ZeroTest z = zero_test(v.entries[i]);
    out[i] = z.numerically_zero ? Valuation::infinity() : Valuation(z.valuation.value() - v.shift);
  }
  return out;
}

ScaledValue difference(const ScaledValue& a, const ScaledValue& b) {
  const int shift = std::max(a.shift, b.shift);
  mpz_class fa, fb;
  const unsigned p = a.entries[0].context()->prime();
  mpz_ui_pow_ui(fa.get_mpz_t(), p, static_cast<unsigned long>(shift - a.shift));
  mpz_ui_pow_ui(fb.get_mpz_t(), p, static_cast<unsigned long>(shift - b.shift));
  ScaledValue out{shift, a.entries};
  for (int i = 0; i < 4; ++i) out.entries[i] = a.entries[i].scaled(fa) - b.entries[i].scaled(fb);
  return out;
}

}  // namespace iwasawa
