#include "iwasawa/cyclotomic.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "iwasawa/error.hpp"

namespace iwasawa {

namespace {

struct LevelShape {
  std::int64_t order;    // p^m
  std::int64_t block;    // p^(m-1), or 1 at level 0
  std::int64_t totient;  // phi(p^m), or 1 at level 0
};

LevelShape shape(unsigned p, int level) {
  if (level < 0) throw InvalidInput("negative cyclotomic level");
  if (level == 0) return {1, 1, 1};
  const std::int64_t block = ipow(p, level - 1);
  return {block * p, block, block * (static_cast<std::int64_t>(p) - 1)};
}

// Folds a polynomial in zeta modulo X^{p^m} - 1 and then modulo Psi_{p^m}.
poly::Coeffs reduce_into_ring(const poly::Coeffs& in, unsigned p, int level, const Context& ctx) {
  const LevelShape s = shape(p, level);
  poly::Coeffs folded(static_cast<std::size_t>(s.order), 0);
  for (std::size_t i = 0; i < in.size(); ++i) {
    if (in[i] == 0) continue;
    auto& slot = folded[i % static_cast<std::size_t>(s.order)];
    slot += in[i];
  }
  // X^{phi + t} = -sum_{j < p-1} X^{j p^(m-1) + t} for 0 <= t < p^(m-1).
  for (std::int64_t k = s.totient; k < s.order; ++k) {
    const mpz_class c = folded[k];
    if (c == 0) continue;
    const std::int64_t t = k - s.totient;
    for (unsigned j = 0; j + 1 < p; ++j) folded[j * s.block + t] -= c;
  }
  folded.resize(static_cast<std::size_t>(s.totient));
  for (auto& c : folded) ctx.reduce(c);
  return folded;
}

mpz_class coefficient_sum(const poly::Coeffs& c, const Context& ctx) {
  mpz_class s = 0;
  for (const auto& x : c) s += x;
  ctx.reduce(s);
  return s;
}

}  // namespace

std::vector<int> cyclo_poly(unsigned p, int m) {
  if (m < 1) throw InvalidInput("cyclo_poly requires m >= 1");
  const LevelShape s = shape(p, m);
  std::vector<int> out(static_cast<std::size_t>(s.totient + 1), 0);
  for (unsigned j = 0; j < p; ++j) out[j * s.block] = 1;
  return out;
}

CyclotomicNumber::CyclotomicNumber(ContextPtr ctx, int level)
    : ctx_(std::move(ctx)), level_(level),
      coeffs_(static_cast<std::size_t>(shape(ctx_->prime(), level).totient), 0) {}

CyclotomicNumber::CyclotomicNumber(ContextPtr ctx, int level, const poly::Coeffs& poly_in_zeta)
    : ctx_(std::move(ctx)), level_(level) {
  poly::Coeffs reduced = poly_in_zeta;
  for (auto& c : reduced) ctx_->reduce(c);
  coeffs_ = reduce_into_ring(reduced, ctx_->prime(), level_, *ctx_);
}

CyclotomicNumber CyclotomicNumber::constant(ContextPtr ctx, int level, const mpz_class& value) {
  CyclotomicNumber x(std::move(ctx), level);
  x.coeffs_[0] = x.ctx_->reduced(value);
  return x;
}

CyclotomicNumber CyclotomicNumber::zeta_power(ContextPtr ctx, int level, std::int64_t k) {
  return constant(std::move(ctx), level, 1).times_zeta_power(k);
}

bool CyclotomicNumber::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const mpz_class& c) { return c == 0; });
}

void CyclotomicNumber::check_compatible(const CyclotomicNumber& other) const {
  if (level_ != other.level_ || !(*ctx_ == *other.ctx_)) {
    throw InvalidInput("cyclotomic operands at different levels or precisions");
  }
}

CyclotomicNumber CyclotomicNumber::operator-() const {
  CyclotomicNumber r(ctx_, level_);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] != 0) r.coeffs_[i] = ctx_->modulus() - coeffs_[i];
  }
  return r;
}

CyclotomicNumber& CyclotomicNumber::operator+=(const CyclotomicNumber& rhs) {
  check_compatible(rhs);
  poly::add_to(coeffs_, rhs.coeffs_, *ctx_);
  return *this;
}

CyclotomicNumber& CyclotomicNumber::operator-=(const CyclotomicNumber& rhs) {
  check_compatible(rhs);
  poly::sub_from(coeffs_, rhs.coeffs_, *ctx_);
  return *this;
}

CyclotomicNumber& CyclotomicNumber::operator*=(const CyclotomicNumber& rhs) {
  check_compatible(rhs);
  coeffs_ = reduce_into_ring(poly::multiply(coeffs_, rhs.coeffs_, *ctx_), ctx_->prime(), level_, *ctx_);
  return *this;
}

CyclotomicNumber CyclotomicNumber::scaled(const mpz_class& factor) const {
  CyclotomicNumber r = *this;
  poly::scale(r.coeffs_, ctx_->reduced(factor), *ctx_);
  return r;
}

CyclotomicNumber CyclotomicNumber::times_zeta_power(std::int64_t k) const {
  const LevelShape s = shape(ctx_->prime(), level_);
  k %= s.order;
  if (k < 0) k += s.order;
  if (k == 0) return *this;
  poly::Coeffs rotated(static_cast<std::size_t>(s.order), 0);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    rotated[(static_cast<std::int64_t>(i) + k) % s.order] = coeffs_[i];
  }
  CyclotomicNumber r(ctx_, level_);
  r.coeffs_ = reduce_into_ring(rotated, ctx_->prime(), level_, *ctx_);
  return r;
}

CyclotomicNumber& CyclotomicNumber::add_constant(const mpz_class& c) {
  coeffs_[0] += c;
  ctx_->reduce(coeffs_[0]);
  return *this;
}

bool CyclotomicNumber::operator==(const CyclotomicNumber& other) const {
  return level_ == other.level_ && *ctx_ == *other.ctx_ && coeffs_ == other.coeffs_;
}

CyclotomicNumber cyclo_embed(const CyclotomicNumber& x, int target_level) {
  if (target_level < x.level()) {
    throw InvalidInput("cyclo_embed cannot lower the level (" + std::to_string(x.level()) + " -> " +
                       std::to_string(target_level) + ")");
  }
  if (target_level == x.level()) return x;
  const unsigned p = x.context()->prime();
  const std::int64_t stride = ipow(p, target_level - x.level());
  const auto src = x.coefficients();
  poly::Coeffs spread((src.size() - 1) * static_cast<std::size_t>(stride) + 1, 0);
  for (std::size_t i = 0; i < src.size(); ++i) spread[i * stride] = src[i];
  return CyclotomicNumber(x.context(), target_level, spread);
}

mpz_class cyclo_norm(const CyclotomicNumber& x) {
  const auto c = x.coefficients();
  if (x.level() == 0) return c[0];
  poly::Coeffs lifted(c.begin(), c.end());
  const auto psi = cyclo_poly(x.context()->prime(), x.level());
  poly::Coeffs modulus(psi.begin(), psi.end());
  return poly::resultant(std::move(modulus), std::move(lifted));
}

Valuation valuation_by_norm(const CyclotomicNumber& x) {
  if (x.is_zero()) return Valuation::infinity();
  mpz_class norm = abs(cyclo_norm(x));
  const unsigned p = x.context()->prime();
  std::int64_t v = 0;
  while (mpz_divisible_ui_p(norm.get_mpz_t(), p)) {
    mpz_divexact_ui(norm.get_mpz_t(), norm.get_mpz_t(), p);
    ++v;
  }
  return Valuation(v, x.degree());
}

poly::Coeffs uniformizer_expansion(const CyclotomicNumber& x) {
  const auto c = x.coefficients();
  return poly::taylor_shift_one(poly::Coeffs(c.begin(), c.end()), *x.context());
}

Valuation valuation_by_uniformizer(const CyclotomicNumber& x) {
  const auto expansion = uniformizer_expansion(x);
  const std::int64_t phi = x.degree();
  std::int64_t best = -1;
  for (std::size_t i = 0; i < expansion.size(); ++i) {
    if (expansion[i] == 0) continue;
    const std::int64_t scaled = x.context()->valuation(expansion[i]) * phi + static_cast<std::int64_t>(i);
    if (best < 0 || scaled < best) best = scaled;
  }
  if (best < 0) return Valuation::infinity();
  return Valuation(best, phi);
}

Valuation cyclo_valuation(const CyclotomicNumber& x) {
  const Valuation v = x.degree() <= kNormRouteMaxDegree ? valuation_by_norm(x) : valuation_by_uniformizer(x);
  const int tau = x.context()->threshold();
  if (v.at_least(tau)) {
    throw PrecisionExhausted("cyclotomic value has valuation >= " + std::to_string(tau) +
                             " (numerically zero at precision " +
                             std::to_string(x.context()->precision()) + ")");
  }
  return v;
}

ZeroTest zero_test(const CyclotomicNumber& x) {
  ZeroTest t{valuation_by_uniformizer(x), false, false, false};
  const int tau = x.context()->threshold();
  t.exactly_zero = t.valuation.is_infinite();
  t.numerically_zero = t.valuation.at_least(tau);
  t.precision_sensitive = !t.numerically_zero && t.valuation.at_least(tau - 4);
  return t;
}

CyclotomicNumber divide_by_uniformizer(const CyclotomicNumber& x, std::int64_t k) {
  const ContextPtr& ctx = x.context();
  const unsigned p = ctx->prime();
  auto c = x.coefficients();
  poly::Coeffs cur(c.begin(), c.end());
  const LevelShape s = shape(p, x.level());
  for (std::int64_t step = 0; step < k; ++step) {
    if (x.level() == 0) {
      if (!mpz_divisible_ui_p(cur[0].get_mpz_t(), p)) throw std::domain_error("value not divisible by p");
      mpz_divexact_ui(cur[0].get_mpz_t(), cur[0].get_mpz_t(), p);
      continue;
    }
    // x(X) - (x(1)/p) Psi(X) vanishes at X = 1; divide it by X - 1.
    const mpz_class sum = coefficient_sum(cur, *ctx);
    if (!mpz_divisible_ui_p(sum.get_mpz_t(), p)) {
      throw std::domain_error("value not divisible by the uniformizer");
    }
    mpz_class lift = sum;
    mpz_divexact_ui(lift.get_mpz_t(), lift.get_mpz_t(), p);
    poly::Coeffs shifted = cur;
    shifted.push_back(0);
    for (unsigned j = 0; j < p; ++j) shifted[j * s.block] -= lift;
    poly::Coeffs quotient(static_cast<std::size_t>(s.totient), 0);
    mpz_class carry = shifted[static_cast<std::size_t>(s.totient)];
    for (std::int64_t i = s.totient - 1; i >= 0; --i) {
      quotient[i] = carry;
      carry += shifted[i];
    }
    for (auto& q : quotient) ctx->reduce(q);
    cur = std::move(quotient);
  }
  return CyclotomicNumber(ctx, x.level(), cur);
}

CyclotomicNumber inverse_unit(const CyclotomicNumber& u) {
  const ContextPtr& ctx = u.context();
  const mpz_class residue = coefficient_sum(poly::Coeffs(u.coefficients().begin(), u.coefficients().end()), *ctx);
  if (mpz_divisible_ui_p(residue.get_mpz_t(), ctx->prime())) {
    throw std::domain_error("inverse_unit of a non-unit");
  }
  CyclotomicNumber y = CyclotomicNumber::constant(ctx, u.level(), ctx->inverse(residue));
  if (u.level() == 0) return y;
  const CyclotomicNumber one = CyclotomicNumber::constant(ctx, u.level(), 1);
  // Newton iteration; the pi-adic error squares at every step.
  for (int iter = 0; iter < 64; ++iter) {
    const CyclotomicNumber err = one - u * y;
    if (err.is_zero()) return y;
    y += y * err;
  }
  throw PrecisionExhausted("inverse_unit did not converge");
}

CyclotomicNumber exact_quotient(const CyclotomicNumber& a, const CyclotomicNumber& b) {
  const ZeroTest tb = zero_test(b);
  if (tb.numerically_zero) throw PrecisionExhausted("division by a numerically zero value");
  const Valuation va = valuation_by_uniformizer(a);
  if (va < tb.valuation) throw std::domain_error("exact_quotient: quotient is not integral");
  const auto r = tb.valuation.value() * static_cast<std::int64_t>(b.degree());
  const std::int64_t k = r.numerator() / r.denominator();
  const CyclotomicNumber unit = divide_by_uniformizer(b, k);
  return divide_by_uniformizer(a, k) * inverse_unit(unit);
}

}  // namespace iwasawa
