#include "iwasawa/series.hpp"

#include <algorithm>
#include <string>

#include "iwasawa/error.hpp"

namespace iwasawa {

namespace {

std::optional<int> combine(const std::optional<int>& a, const std::optional<int>& b) {
  if (!a) return b;
  if (!b) return a;
  return std::min(*a, *b);
}

TwoVarSeries::Truncation combine(const TwoVarSeries::Truncation& a, const TwoVarSeries::Truncation& b) {
  if (!a) return b;
  if (!b) return a;
  return std::make_pair(std::min(a->first, b->first), std::min(a->second, b->second));
}

void require_same(const Context& a, const Context& b) {
  if (!(a == b)) throw InvalidInput("series operands carry different p, N or guard");
}

// Sum over j < p of (1+X)^(j p^(n-1)), exactly.
poly::Coeffs shifted_cyclotomic(unsigned p, int n) {
  const std::int64_t block = ipow(p, n - 1);
  const std::int64_t deg = block * (p - 1);
  poly::Coeffs out(static_cast<std::size_t>(deg + 1), 0);
  for (unsigned j = 0; j < p; ++j) {
    const std::int64_t m = j * block;
    mpz_class c = 1;
    for (std::int64_t k = 0; k <= m; ++k) {
      out[k] += c;
      c *= (m - k);
      mpz_divexact_ui(c.get_mpz_t(), c.get_mpz_t(), static_cast<unsigned long>(k + 1));
    }
  }
  return out;
}

// Horner step acc <- acc * (zeta^k - 1).
constexpr int kFoldThreshold = 48;

void times_root_minus_one(CyclotomicNumber& acc, std::int64_t k) {
  CyclotomicNumber shifted = acc.times_zeta_power(k);
  shifted -= acc;
  acc = std::move(shifted);
}

int order_exponent(unsigned p, int level, std::int64_t k) {
  const std::int64_t n = ipow(p, level);
  k %= n;
  if (k < 0) k += n;
  if (k == 0) return 0;
  int v = 0;
  while (k % p == 0) {
    k /= p;
    ++v;
  }
  return level - v;
}

void check_tail(const Context& ctx, const std::optional<int>& trunc, int order, const char* var) {
  if (!trunc || order == 0) return;
  if (*trunc + 1 < required_truncation(ctx, order) + 1) {
    throw TruncationInsufficient(std::string("truncation degree ") + std::to_string(*trunc) + " in " +
                                 var + " is too small for roots of order p^" + std::to_string(order) +
                                 "; need at least " + std::to_string(required_truncation(ctx, order)));
  }
}

}  // namespace

// ---------------------------------------------------------------- OneVarSeries

OneVarSeries::OneVarSeries(ContextPtr ctx, std::optional<int> trunc)
    : ctx_(std::move(ctx)), trunc_(trunc) {}

OneVarSeries::OneVarSeries(ContextPtr ctx, poly::Coeffs coeffs, std::optional<int> trunc)
    : ctx_(std::move(ctx)), coeffs_(std::move(coeffs)), trunc_(trunc) {
  for (auto& c : coeffs_) ctx_->reduce(c);
  normalize();
}

OneVarSeries OneVarSeries::from_integers(ContextPtr ctx, const std::vector<long>& coeffs) {
  poly::Coeffs c(coeffs.begin(), coeffs.end());
  return OneVarSeries(std::move(ctx), std::move(c));
}

OneVarSeries OneVarSeries::monomial(ContextPtr ctx, int degree, const mpz_class& c) {
  poly::Coeffs v(static_cast<std::size_t>(degree + 1), 0);
  v[degree] = c;
  return OneVarSeries(std::move(ctx), std::move(v));
}

void OneVarSeries::normalize() {
  if (trunc_ && static_cast<int>(coeffs_.size()) > *trunc_ + 1) coeffs_.resize(*trunc_ + 1);
  poly::trim(coeffs_);
}

OneVarSeries& OneVarSeries::operator+=(const OneVarSeries& rhs) {
  require_same(*ctx_, *rhs.ctx_);
  poly::add_to(coeffs_, rhs.coeffs_, *ctx_);
  trunc_ = combine(trunc_, rhs.trunc_);
  normalize();
  return *this;
}

OneVarSeries& OneVarSeries::operator-=(const OneVarSeries& rhs) {
  require_same(*ctx_, *rhs.ctx_);
  poly::sub_from(coeffs_, rhs.coeffs_, *ctx_);
  trunc_ = combine(trunc_, rhs.trunc_);
  normalize();
  return *this;
}

OneVarSeries& OneVarSeries::operator*=(const OneVarSeries& rhs) {
  require_same(*ctx_, *rhs.ctx_);
  trunc_ = combine(trunc_, rhs.trunc_);
  if (trunc_) {
    coeffs_ = poly::multiply_truncated(coeffs_, rhs.coeffs_, static_cast<std::size_t>(*trunc_ + 1), *ctx_);
  } else {
    coeffs_ = poly::multiply(coeffs_, rhs.coeffs_, *ctx_);
  }
  normalize();
  return *this;
}

OneVarSeries OneVarSeries::operator-() const { return scaled(-1); }

OneVarSeries OneVarSeries::scaled(const mpz_class& c) const {
  OneVarSeries r = *this;
  poly::scale(r.coeffs_, ctx_->reduced(c), *ctx_);
  r.normalize();
  return r;
}

OneVarSeries OneVarSeries::truncated(int d) const {
  OneVarSeries r = *this;
  r.trunc_ = combine(trunc_, d);
  r.normalize();
  return r;
}

bool OneVarSeries::operator==(const OneVarSeries& other) const {
  return *ctx_ == *other.ctx_ && trunc_ == other.trunc_ && coeffs_ == other.coeffs_;
}

// ---------------------------------------------------------------- TwoVarSeries

TwoVarSeries::TwoVarSeries(ContextPtr ctx, Truncation trunc) : ctx_(std::move(ctx)), trunc_(trunc) {}

TwoVarSeries TwoVarSeries::constant(ContextPtr ctx, const mpz_class& c) { return monomial(std::move(ctx), 0, 0, c); }

TwoVarSeries TwoVarSeries::monomial(ContextPtr ctx, int i, int j, const mpz_class& c) {
  TwoVarSeries f(std::move(ctx));
  f.set(i, j, c);
  return f;
}

TwoVarSeries TwoVarSeries::in_tp(const OneVarSeries& f) {
  Truncation t;
  if (f.truncation()) t = std::make_pair(*f.truncation(), 1 << 30);
  TwoVarSeries g(f.context(), t);
  for (int i = 0; i <= f.degree(); ++i) g.set(i, 0, f.coefficient(i));
  return g;
}

TwoVarSeries TwoVarSeries::in_tq(const OneVarSeries& f) {
  Truncation t;
  if (f.truncation()) t = std::make_pair(1 << 30, *f.truncation());
  TwoVarSeries g(f.context(), t);
  for (int j = 0; j <= f.degree(); ++j) g.set(0, j, f.coefficient(j));
  return g;
}

mpz_class TwoVarSeries::coefficient(int i, int j) const {
  auto it = terms_.find({i, j});
  return it == terms_.end() ? mpz_class(0) : it->second;
}

void TwoVarSeries::set(int i, int j, const mpz_class& c) {
  if (i < 0 || j < 0) throw InvalidInput("negative exponent in a series term");
  const mpz_class r = ctx_->reduced(c);
  if (r == 0 || (trunc_ && (i > trunc_->first || j > trunc_->second))) {
    terms_.erase({i, j});
  } else {
    terms_[{i, j}] = r;
  }
}

std::pair<int, int> TwoVarSeries::bidegree() const {
  std::pair<int, int> d{-1, -1};
  for (const auto& [ij, c] : terms_) {
    d.first = std::max(d.first, ij.first);
    d.second = std::max(d.second, ij.second);
  }
  return d;
}

void TwoVarSeries::drop_beyond_truncation() {
  if (!trunc_) return;
  std::erase_if(terms_, [&](const auto& kv) {
    return kv.first.first > trunc_->first || kv.first.second > trunc_->second;
  });
}

TwoVarSeries& TwoVarSeries::operator+=(const TwoVarSeries& rhs) {
  require_same(*ctx_, *rhs.ctx_);
  for (const auto& [ij, c] : rhs.terms_) set(ij.first, ij.second, coefficient(ij.first, ij.second) + c);
  trunc_ = combine(trunc_, rhs.trunc_);
  drop_beyond_truncation();
  return *this;
}

TwoVarSeries& TwoVarSeries::operator-=(const TwoVarSeries& rhs) {
  require_same(*ctx_, *rhs.ctx_);
  for (const auto& [ij, c] : rhs.terms_) set(ij.first, ij.second, coefficient(ij.first, ij.second) - c);
  trunc_ = combine(trunc_, rhs.trunc_);
  drop_beyond_truncation();
  return *this;
}

TwoVarSeries& TwoVarSeries::operator*=(const TwoVarSeries& rhs) {
  require_same(*ctx_, *rhs.ctx_);
  const Truncation t = combine(trunc_, rhs.trunc_);
  std::map<Index, mpz_class> acc;
  for (const auto& [a, x] : terms_) {
    for (const auto& [b, y] : rhs.terms_) {
      const Index ij{a.first + b.first, a.second + b.second};
      if (t && (ij.first > t->first || ij.second > t->second)) continue;
      mpz_addmul(acc[ij].get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
    }
  }
  terms_.clear();
  trunc_ = t;
  for (auto& [ij, c] : acc) set(ij.first, ij.second, c);
  return *this;
}

TwoVarSeries TwoVarSeries::operator-() const { return scaled(-1); }

TwoVarSeries TwoVarSeries::scaled(const mpz_class& c) const {
  TwoVarSeries r(ctx_, trunc_);
  for (const auto& [ij, x] : terms_) r.set(ij.first, ij.second, x * c);
  return r;
}

bool TwoVarSeries::operator==(const TwoVarSeries& other) const {
  return *ctx_ == *other.ctx_ && trunc_ == other.trunc_ && terms_ == other.terms_;
}

// ---------------------------------------------------------------- standard polynomials

poly::Coeffs omega_exact(unsigned p, int n) {
  if (n < 0) throw InvalidInput("omega needs n >= 0");
  const std::int64_t m = ipow(p, n);
  poly::Coeffs out(static_cast<std::size_t>(m + 1), 0);
  mpz_class c = 1;
  for (std::int64_t k = 1; k <= m; ++k) {
    c *= static_cast<unsigned long>(m - k + 1);
    mpz_divexact_ui(c.get_mpz_t(), c.get_mpz_t(), static_cast<unsigned long>(k));
    out[k] = c;
  }
  return out;
}

poly::Coeffs phi_poly_exact(unsigned p, int n) {
  if (n < 1) throw InvalidInput("phi_poly needs n >= 1");
  return shifted_cyclotomic(p, n);
}

poly::Coeffs omega_pm_exact(unsigned p, int n, int sign) {
  if (n < 0) throw InvalidInput("omega_pm needs n >= 0");
  poly::Coeffs out{0, 1};
  for (int i = 1; i <= n; ++i) {
    if ((i % 2 == 0) == (sign > 0)) out = poly::multiply_exact(out, phi_poly_exact(p, i));
  }
  return out;
}

OneVarSeries omega(ContextPtr ctx, int n) {
  if (n < 0) throw InvalidInput("omega needs n >= 0");
  const std::int64_t m = ipow(ctx->prime(), n);
  poly::Coeffs y(static_cast<std::size_t>(m + 1), 0);
  y[0] = -1;
  y[m] = 1;
  poly::Coeffs x = poly::taylor_shift_one(y, *ctx);
  return OneVarSeries(std::move(ctx), std::move(x));
}

OneVarSeries phi_poly(ContextPtr ctx, int n) {
  const unsigned p = ctx->prime();
  return OneVarSeries(std::move(ctx), phi_poly_exact(p, n));
}

OneVarSeries omega_pm(ContextPtr ctx, int n, int sign) {
  if (n < 0) throw InvalidInput("omega_pm needs n >= 0");
  OneVarSeries out = OneVarSeries::monomial(ctx, 1);
  for (int i = 1; i <= n; ++i) {
    if ((i % 2 == 0) == (sign > 0)) out *= phi_poly(ctx, i);
  }
  return out;
}

// ---------------------------------------------------------------- evaluation

int required_truncation(const Context& ctx, int level) {
  return static_cast<int>(ctx.threshold() * totient_pow(ctx.prime(), level)) - 1;
}

namespace {

// With d the order of zeta^k and f = sum_b T^(bd) f_b, the value is g(zeta^k) for
// g(Y) = sum_b R^b f_b(Y - 1) mod Y^d - 1, where R = (Y - 1)^d mod Y^d - 1.
CyclotomicNumber eval_by_blocks(const OneVarSeries& f, int level, std::int64_t k) {
  const ContextPtr& ctx = f.context();
  const unsigned p = ctx->prime();
  const int o = order_exponent(p, level, k);
  if (o == 0) return CyclotomicNumber::constant(ctx, level, f.coefficient(0));
  const auto d = static_cast<std::size_t>(ipow(p, o));
  auto fold = [&](poly::Coeffs c) {
    for (std::size_t i = d; i < c.size(); ++i) c[i % d] += c[i];
    c.resize(d, 0);
    for (auto& x : c) ctx->reduce(x);
    return c;
  };
  poly::Coeffs td(d + 1, 0);
  td[d] = 1;
  const poly::Coeffs r = fold(poly::taylor_shift(td, -1, *ctx));
  const auto& c = f.coefficients();
  const std::size_t blocks = (c.size() + d - 1) / d;
  poly::Coeffs acc(d, 0);
  for (std::size_t b = blocks; b-- > 0;) {
    acc = fold(poly::multiply(acc, r, *ctx));
    const auto lo = c.begin() + static_cast<std::ptrdiff_t>(b * d);
    const auto hi = c.begin() + static_cast<std::ptrdiff_t>(std::min(c.size(), (b + 1) * d));
    poly::add_to(acc, poly::taylor_shift(poly::Coeffs(lo, hi), -1, *ctx), *ctx);
  }
  const std::int64_t order = ipow(p, level);
  std::int64_t kk = k % order;
  if (kk < 0) kk += order;
  poly::Coeffs spread(static_cast<std::size_t>(order), 0);
  for (std::size_t i = 0; i < d; ++i) spread[static_cast<std::size_t>((static_cast<std::int64_t>(i) * kk) % order)] += acc[i];
  return CyclotomicNumber(ctx, level, spread);
}

}  // namespace

CyclotomicNumber eval_at_root(const OneVarSeries& f, int level, std::int64_t k) {
  const ContextPtr& ctx = f.context();
  check_tail(*ctx, f.truncation(), order_exponent(ctx->prime(), level, k), "T");
  if (f.degree() >= kFoldThreshold) return eval_by_blocks(f, level, k);
  CyclotomicNumber acc(ctx, level);
  for (int i = f.degree(); i >= 0; --i) {
    times_root_minus_one(acc, k);
    acc.add_constant(f.coefficient(i));
  }
  return acc;
}

CyclotomicNumber eval_at_point(const TwoVarSeries& f, const CharacterPoint& w) {
  const ContextPtr& ctx = f.context();
  const unsigned p = ctx->prime();
  const int o1 = order_exponent(p, w.level, w.k1);
  const int o2 = order_exponent(p, w.level, w.k2);
  if (f.truncation()) {
    check_tail(*ctx, f.truncation()->first, o1, "T_p");
    check_tail(*ctx, f.truncation()->second, o2, "T_q");
  }
  CyclotomicNumber acc(ctx, w.level);
  if (f.is_zero()) return acc;
  // Rows of fixed T_p exponent, each evaluated in T_q by Horner.
  std::map<int, std::vector<std::pair<int, mpz_class>>> rows;
  for (const auto& [ij, c] : f.terms()) {
    if (o1 == 0 && ij.first > 0) continue;
    if (o2 == 0 && ij.second > 0) continue;
    rows[ij.first].emplace_back(ij.second, c);
  }
  if (rows.empty()) return acc;
  auto row_value = [&](const std::vector<std::pair<int, mpz_class>>& row) {
    CyclotomicNumber v(ctx, w.level);
    int j = row.back().first;
    for (auto it = row.rbegin(); it != row.rend(); ++it) {
      while (j > it->first) {
        times_root_minus_one(v, w.k2);
        --j;
      }
      v.add_constant(it->second);
    }
    for (; j > 0; --j) times_root_minus_one(v, w.k2);
    return v;
  };
  int i = rows.rbegin()->first;
  for (auto it = rows.rbegin(); it != rows.rend(); ++it) {
    while (i > it->first) {
      times_root_minus_one(acc, w.k1);
      --i;
    }
    acc += row_value(it->second);
  }
  for (; i > 0; --i) times_root_minus_one(acc, w.k1);
  return acc;
}

CyclotomicNumber eval_at_character(const TwoVarSeries& f, const CharacterClass& theta) {
  return eval_at_point(f, realize(f.context()->prime(), theta));
}

CyclotomicNumber eval_at_character(const OneVarSeries& f, const CharacterClass& theta) {
  const CharacterPoint w = realize(f.context()->prime(), theta);
  return eval_at_root(f, w.level, w.k1);
}

// ---------------------------------------------------------------- Weierstrass preparation

OneVarSeries inverse_series(const OneVarSeries& u, int d) {
  const ContextPtr& ctx = u.context();
  if (u.coefficient(0) == 0 || ctx->valuation(u.coefficient(0)) != 0) {
    throw NotAUnitSeries("series has a non-unit constant term");
  }
  const mpz_class inv0 = ctx->inverse(u.coefficient(0));
  poly::Coeffs v(static_cast<std::size_t>(d + 1), 0);
  v[0] = inv0;
  const auto& c = u.coefficients();
  for (int k = 1; k <= d; ++k) {
    mpz_class s = 0;
    for (int i = 1; i <= k && i < static_cast<int>(c.size()); ++i) {
      mpz_addmul(s.get_mpz_t(), c[i].get_mpz_t(), v[k - i].get_mpz_t());
    }
    s *= -inv0;
    ctx->reduce(s);
    v[k] = s;
  }
  return OneVarSeries(ctx, std::move(v), d);
}

WeierstrassFactors weierstrass_prepare(const OneVarSeries& f, std::optional<int> unit_trunc) {
  const ContextPtr& ctx = f.context();
  const unsigned p = ctx->prime();
  const int n_prec = ctx->precision();
  if (f.is_zero()) throw NotAUnitSeries("the zero series has no Weierstrass factorization");
  const int d = f.truncation() ? *f.truncation() : unit_trunc.value_or(2 * f.degree() + 8);

  int mu = n_prec;
  for (const auto& c : f.coefficients()) {
    if (c != 0) mu = std::min(mu, ctx->valuation(c));
  }
  if (mu >= ctx->threshold()) {
    throw NotAUnitSeries("series is divisible by p^" + std::to_string(mu) + ", beyond the working precision");
  }
  mpz_class pmu;
  mpz_ui_pow_ui(pmu.get_mpz_t(), p, static_cast<unsigned long>(mu));
  poly::Coeffs g = f.coefficients();
  for (auto& c : g) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), pmu.get_mpz_t());

  int lambda = 0;
  while (ctx->valuation(g[lambda]) != 0) ++lambda;

  const std::size_t keep = static_cast<std::size_t>(d + 1);
  const std::size_t work = keep + static_cast<std::size_t>(lambda) * (n_prec + 3);
  const poly::Coeffs f_hi(g.begin() + lambda, g.end());
  const OneVarSeries f_hi_inv = inverse_series(OneVarSeries(ctx, f_hi), static_cast<int>(work));

  // Weierstrass division of T^lambda by g: T^lambda = q g + r with deg r < lambda.
  poly::Coeffs h(static_cast<std::size_t>(lambda + 1), 0);
  h[lambda] = 1;
  poly::Coeffs q;
  for (int iter = 0; iter < n_prec + 3; ++iter) {
    if (static_cast<int>(h.size()) <= lambda) break;
    poly::Coeffs a(h.begin() + lambda, h.end());
    poly::trim(a);
    if (a.empty()) break;
    poly::Coeffs t = poly::multiply_truncated(a, f_hi_inv.coefficients(), work, *ctx);
    poly::add_to(q, t, *ctx);
    poly::sub_from(h, poly::multiply_truncated(t, g, work + lambda, *ctx), *ctx);
    poly::trim(h);
  }
  h.resize(static_cast<std::size_t>(lambda), 0);

  poly::Coeffs dist(static_cast<std::size_t>(lambda + 1), 0);
  for (int i = 0; i < lambda; ++i) dist[i] = ctx->reduced(-h[i]);
  dist[lambda] = 1;

  if (q.size() > keep) q.resize(keep);
  OneVarSeries unit = inverse_series(OneVarSeries(ctx, q), d);
  return {mu, std::move(unit), OneVarSeries(ctx, std::move(dist))};
}

}  // namespace iwasawa
