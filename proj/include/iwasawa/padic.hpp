#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>

#include <boost/rational.hpp>
#include <gmpxx.h>

namespace iwasawa {

inline constexpr int kDefaultPrecision = 48;
inline constexpr int kDefaultGuard = 8;

/// Prime, capped precision N and guard g shared by every value of a computation.
/// Values with valuation at or above the threshold N - g are indistinguishable
/// from zero.
class Context {
 public:
  Context(unsigned prime, int precision = kDefaultPrecision, int guard = kDefaultGuard);

  unsigned prime() const noexcept { return prime_; }
  int precision() const noexcept { return precision_; }
  int guard() const noexcept { return guard_; }
  int threshold() const noexcept { return precision_ - guard_; }
  const mpz_class& modulus() const noexcept { return modulus_; }

  /// Reduces into [0, p^N).
  void reduce(mpz_class& x) const;
  mpz_class reduced(const mpz_class& x) const;
  /// p-adic valuation of a residue, capped at N (N means the residue is 0).
  int valuation(const mpz_class& residue) const;
  /// Centered representative in (-p^N/2, p^N/2], used for printing.
  mpz_class centered(const mpz_class& residue) const;
  /// Inverse of a unit residue modulo p^N.
  mpz_class inverse(const mpz_class& unit) const;

  bool operator==(const Context& other) const noexcept {
    return prime_ == other.prime_ && precision_ == other.precision_ && guard_ == other.guard_;
  }

 private:
  unsigned prime_;
  int precision_;
  int guard_;
  mpz_class modulus_;
};

using ContextPtr = std::shared_ptr<const Context>;

/// Validates p (odd prime), N and g, then builds a shared context.
ContextPtr make_context(unsigned prime, int precision = kDefaultPrecision,
                        int guard = kDefaultGuard);

bool is_odd_prime(unsigned p);

/// p^k as an exact integer.
std::int64_t ipow(std::int64_t base, int exponent);

/// Euler totient of p^m; 1 for m = 0.
std::int64_t totient_pow(unsigned p, int m);

/// An element of Z/p^N viewed as a capped-precision p-adic integer.
class PadicInt {
 public:
  PadicInt(ContextPtr ctx, const mpz_class& value);
  PadicInt(ContextPtr ctx, long value);

  const ContextPtr& context() const noexcept { return ctx_; }
  const mpz_class& residue() const noexcept { return residue_; }

  /// Largest k <= N with p^k dividing the residue; N when the residue is 0.
  int valuation() const { return ctx_->valuation(residue_); }
  bool is_zero() const noexcept { return residue_ == 0; }
  bool is_unit() const { return valuation() == 0; }
  PadicInt inverse() const;

  PadicInt operator-() const;
  PadicInt& operator+=(const PadicInt& rhs);
  PadicInt& operator-=(const PadicInt& rhs);
  PadicInt& operator*=(const PadicInt& rhs);
  friend PadicInt operator+(PadicInt lhs, const PadicInt& rhs) { return lhs += rhs; }
  friend PadicInt operator-(PadicInt lhs, const PadicInt& rhs) { return lhs -= rhs; }
  friend PadicInt operator*(PadicInt lhs, const PadicInt& rhs) { return lhs *= rhs; }

  bool operator==(const PadicInt& other) const;

  std::string to_string() const;

 private:
  ContextPtr ctx_;
  mpz_class residue_;
};

/// An exact non-negative rational valuation, or +infinity.
class Valuation {
 public:
  using Rational = boost::rational<std::int64_t>;

  Valuation() = default;
  Valuation(std::int64_t numerator, std::int64_t denominator = 1);
  explicit Valuation(Rational value);

  static Valuation infinity();

  bool is_infinite() const noexcept { return infinite_; }
  Rational value() const;
  std::int64_t numerator() const;
  std::int64_t denominator() const;

  Valuation& operator+=(const Valuation& rhs);
  friend Valuation operator+(Valuation lhs, const Valuation& rhs) { return lhs += rhs; }
  /// Exact difference of two finite valuations (may be negative).
  friend Rational operator-(const Valuation& lhs, const Valuation& rhs);

  bool operator==(const Valuation& other) const noexcept;
  std::strong_ordering operator<=>(const Valuation& other) const;

  /// True when the value is at least the integer bound.
  bool at_least(std::int64_t bound) const;

  /// "num/den", or "inf".
  std::string to_string() const;

 private:
  bool infinite_ = false;
  Rational value_{0};
};

std::ostream& operator<<(std::ostream& os, const Valuation& v);
std::ostream& operator<<(std::ostream& os, const PadicInt& x);

std::string rational_to_string(const Valuation::Rational& r);

}  // namespace iwasawa
