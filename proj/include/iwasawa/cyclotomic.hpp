#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "iwasawa/modpoly.hpp"
#include "iwasawa/padic.hpp"

namespace iwasawa {

/// Coefficients of the p^m-th cyclotomic polynomial sum_{j<p} X^{j p^(m-1)}.
std::vector<int> cyclo_poly(unsigned p, int m);

/// An element of Z_p[zeta_{p^m}] = Z_p[X]/(Psi_{p^m}) modulo p^N, stored in the
/// power basis 1, zeta, ..., zeta^(phi(p^m)-1). Level 0 is Z_p itself.
class CyclotomicNumber {
 public:
  CyclotomicNumber(ContextPtr ctx, int level);
  /// Reduces an arbitrary polynomial in zeta (any degree) into the ring.
  CyclotomicNumber(ContextPtr ctx, int level, const poly::Coeffs& poly_in_zeta);

  static CyclotomicNumber constant(ContextPtr ctx, int level, const mpz_class& value);
  /// zeta^k, k taken modulo p^level.
  static CyclotomicNumber zeta_power(ContextPtr ctx, int level, std::int64_t k);

  const ContextPtr& context() const noexcept { return ctx_; }
  int level() const noexcept { return level_; }
  /// phi(p^level), or 1 at level 0.
  std::int64_t degree() const noexcept { return static_cast<std::int64_t>(coeffs_.size()); }
  std::span<const mpz_class> coefficients() const noexcept { return coeffs_; }
  PadicInt coefficient(std::size_t i) const { return PadicInt(ctx_, coeffs_.at(i)); }

  bool is_zero() const;

  CyclotomicNumber operator-() const;
  CyclotomicNumber& operator+=(const CyclotomicNumber& rhs);
  CyclotomicNumber& operator-=(const CyclotomicNumber& rhs);
  CyclotomicNumber& operator*=(const CyclotomicNumber& rhs);
  friend CyclotomicNumber operator+(CyclotomicNumber a, const CyclotomicNumber& b) { return a += b; }
  friend CyclotomicNumber operator-(CyclotomicNumber a, const CyclotomicNumber& b) { return a -= b; }
  friend CyclotomicNumber operator*(CyclotomicNumber a, const CyclotomicNumber& b) { return a *= b; }

  CyclotomicNumber scaled(const mpz_class& factor) const;
  /// this * zeta^k without a general multiplication.
  CyclotomicNumber times_zeta_power(std::int64_t k) const;
  /// Adds an integer to the constant coefficient.
  CyclotomicNumber& add_constant(const mpz_class& c);

  bool operator==(const CyclotomicNumber& other) const;

 private:
  void check_compatible(const CyclotomicNumber& other) const;

  ContextPtr ctx_;
  int level_;
  poly::Coeffs coeffs_;
};

/// Image under zeta_{p^m} -> zeta_{p^M}^{p^(M-m)}.
CyclotomicNumber cyclo_embed(const CyclotomicNumber& x, int target_level);

/// Exact integer norm of the lifted representative: Res(Psi_{p^m}, x(X)).
mpz_class cyclo_norm(const CyclotomicNumber& x);

/// ord_p(Norm(x)) / phi(p^m); infinity when the representative is 0.
Valuation valuation_by_norm(const CyclotomicNumber& x);

/// Coefficients of x in the basis 1, pi, pi^2, ... with pi = zeta - 1.
poly::Coeffs uniformizer_expansion(const CyclotomicNumber& x);

/// min_i ord_p(c_i) + i/phi(p^m) over the pi-adic expansion; infinity at 0.
Valuation valuation_by_uniformizer(const CyclotomicNumber& x);

/// Largest phi(p^m) for which cyclo_valuation uses the resultant route.
inline constexpr std::int64_t kNormRouteMaxDegree = 54;

/// ord_p(x). Uses the norm (resultant) up to kNormRouteMaxDegree and the
/// pi-adic expansion above it. Throws PrecisionExhausted when the value is at
/// or above the guard threshold.
Valuation cyclo_valuation(const CyclotomicNumber& x);

/// Zero test under the guard policy.
struct ZeroTest {
  Valuation valuation;       // infinity when exactly zero mod p^N
  bool numerically_zero;     // valuation >= N - g
  bool exactly_zero;         // residue vector is 0
  bool precision_sensitive;  // valuation in [N - g - 4, N - g)
};
ZeroTest zero_test(const CyclotomicNumber& x);

/// x / (zeta - 1)^k; requires ord_p(x) >= k/phi(p^m).
CyclotomicNumber divide_by_uniformizer(const CyclotomicNumber& x, std::int64_t k = 1);

/// Inverse of a unit (ord_p = 0).
CyclotomicNumber inverse_unit(const CyclotomicNumber& u);

/// a / b for ord_p(a) >= ord_p(b), ord_p(b) below the guard threshold.
CyclotomicNumber exact_quotient(const CyclotomicNumber& a, const CyclotomicNumber& b);

}  // namespace iwasawa
