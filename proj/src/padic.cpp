#include "iwasawa/padic.hpp"

#include <ostream>

#include "iwasawa/error.hpp"

namespace iwasawa {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::invalid_input: return "InvalidInput";
    case ErrorKind::precision_exhausted: return "PrecisionExhausted";
    case ErrorKind::truncation_insufficient: return "TruncationInsufficient";
    case ErrorKind::not_a_unit_series: return "NotAUnitSeries";
    case ErrorKind::size_cap_exceeded: return "SizeCapExceeded";
    case ErrorKind::torsion_assumption_violated: return "TorsionAssumptionViolated";
  }
  return "Error";
}

bool is_odd_prime(unsigned p) {
  if (p < 3 || p % 2 == 0) return false;
  for (unsigned d = 3; d * d <= p; d += 2) {
    if (p % d == 0) return false;
  }
  return true;
}

std::int64_t ipow(std::int64_t base, int exponent) {
  std::int64_t result = 1;
  for (int i = 0; i < exponent; ++i) result *= base;
  return result;
}

std::int64_t totient_pow(unsigned p, int m) {
  if (m <= 0) return 1;
  return ipow(p, m - 1) * (static_cast<std::int64_t>(p) - 1);
}

Context::Context(unsigned prime, int precision, int guard)
    : prime_(prime), precision_(precision), guard_(guard) {
  mpz_ui_pow_ui(modulus_.get_mpz_t(), prime_, static_cast<unsigned long>(precision_));
}

void Context::reduce(mpz_class& x) const {
  if (x < 0 || x >= modulus_) mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), modulus_.get_mpz_t());
}

mpz_class Context::reduced(const mpz_class& x) const {
  mpz_class r = x;
  reduce(r);
  return r;
}

int Context::valuation(const mpz_class& residue) const {
  if (residue == 0) return precision_;
  int v = 0;
  mpz_class q = residue;
  while (v < precision_ && mpz_divisible_ui_p(q.get_mpz_t(), prime_)) {
    mpz_divexact_ui(q.get_mpz_t(), q.get_mpz_t(), prime_);
    ++v;
  }
  return v;
}

mpz_class Context::centered(const mpz_class& residue) const {
  mpz_class r = reduced(residue);
  if (2 * r > modulus_) r -= modulus_;
  return r;
}

mpz_class Context::inverse(const mpz_class& unit) const {
  mpz_class inv;
  if (mpz_invert(inv.get_mpz_t(), unit.get_mpz_t(), modulus_.get_mpz_t()) == 0) {
    throw InvalidInput("inverse of a non-unit residue");
  }
  return inv;
}

ContextPtr make_context(unsigned prime, int precision, int guard) {
  if (!is_odd_prime(prime)) throw InvalidInput("p must be an odd prime, got " + std::to_string(prime));
  if (guard < 4) throw InvalidInput("guard must be at least 4");
  if (precision <= guard) throw InvalidInput("precision must exceed the guard");
  return std::make_shared<const Context>(prime, precision, guard);
}

PadicInt::PadicInt(ContextPtr ctx, const mpz_class& value)
    : ctx_(std::move(ctx)), residue_(value) {
  ctx_->reduce(residue_);
}

PadicInt::PadicInt(ContextPtr ctx, long value) : PadicInt(std::move(ctx), mpz_class(value)) {}

PadicInt PadicInt::inverse() const {
  if (!is_unit()) throw InvalidInput("PadicInt::inverse of a non-unit");
  return PadicInt(ctx_, ctx_->inverse(residue_));
}

PadicInt PadicInt::operator-() const { return PadicInt(ctx_, -residue_); }

PadicInt& PadicInt::operator+=(const PadicInt& rhs) {
  residue_ += rhs.residue_;
  if (residue_ >= ctx_->modulus()) residue_ -= ctx_->modulus();
  return *this;
}

PadicInt& PadicInt::operator-=(const PadicInt& rhs) {
  residue_ -= rhs.residue_;
  if (residue_ < 0) residue_ += ctx_->modulus();
  return *this;
}

PadicInt& PadicInt::operator*=(const PadicInt& rhs) {
  residue_ *= rhs.residue_;
  ctx_->reduce(residue_);
  return *this;
}

bool PadicInt::operator==(const PadicInt& other) const {
  return *ctx_ == *other.ctx_ && residue_ == other.residue_;
}

std::string PadicInt::to_string() const { return ctx_->centered(residue_).get_str(); }

Valuation::Valuation(std::int64_t numerator, std::int64_t denominator)
    : value_(numerator, denominator) {}

Valuation::Valuation(Rational value) : value_(value) {}

Valuation Valuation::infinity() {
  Valuation v;
  v.infinite_ = true;
  return v;
}

Valuation::Rational Valuation::value() const {
  if (infinite_) throw std::logic_error("value() of an infinite valuation");
  return value_;
}

std::int64_t Valuation::numerator() const { return value().numerator(); }
std::int64_t Valuation::denominator() const { return value().denominator(); }

Valuation& Valuation::operator+=(const Valuation& rhs) {
  if (infinite_ || rhs.infinite_) {
    infinite_ = true;
    value_ = 0;
  } else {
    value_ += rhs.value_;
  }
  return *this;
}

Valuation::Rational operator-(const Valuation& lhs, const Valuation& rhs) {
  return lhs.value() - rhs.value();
}

bool Valuation::operator==(const Valuation& other) const noexcept {
  if (infinite_ || other.infinite_) return infinite_ == other.infinite_;
  return value_ == other.value_;
}

std::strong_ordering Valuation::operator<=>(const Valuation& other) const {
  if (infinite_ || other.infinite_) {
    if (infinite_ == other.infinite_) return std::strong_ordering::equal;
    return infinite_ ? std::strong_ordering::greater : std::strong_ordering::less;
  }
  if (value_ < other.value_) return std::strong_ordering::less;
  if (value_ > other.value_) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

bool Valuation::at_least(std::int64_t bound) const {
  return infinite_ || value_ >= Rational(bound);
}

std::string rational_to_string(const Valuation::Rational& r) {
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

std::string Valuation::to_string() const {
  if (infinite_) return "inf";
  return rational_to_string(value_);
}

std::ostream& operator<<(std::ostream& os, const Valuation& v) { return os << v.to_string(); }
std::ostream& operator<<(std::ostream& os, const PadicInt& x) { return os << x.to_string(); }

}  // namespace iwasawa
