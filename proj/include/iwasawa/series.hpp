#pragma once

#include <map>
#include <optional>
#include <utility>

#include "iwasawa/characters.hpp"
#include "iwasawa/cyclotomic.hpp"
#include "iwasawa/modpoly.hpp"
#include "iwasawa/padic.hpp"

namespace iwasawa {

/// A power series in one variable T over Z/p^N. Without a truncation degree it
/// is an exact polynomial; with truncation D only the coefficients of T^0..T^D
/// are meaningful and arithmetic never reports anything beyond D.
class OneVarSeries {
 public:
  explicit OneVarSeries(ContextPtr ctx, std::optional<int> trunc = std::nullopt);
  OneVarSeries(ContextPtr ctx, poly::Coeffs coeffs, std::optional<int> trunc = std::nullopt);
  static OneVarSeries from_integers(ContextPtr ctx, const std::vector<long>& coeffs);
  static OneVarSeries monomial(ContextPtr ctx, int degree, const mpz_class& c = 1);

  const ContextPtr& context() const noexcept { return ctx_; }
  const poly::Coeffs& coefficients() const noexcept { return coeffs_; }
  /// Residue of the T^i coefficient (0 past the stored range).
  mpz_class coefficient(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : mpz_class(0); }
  /// -1 for the zero series.
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  const std::optional<int>& truncation() const noexcept { return trunc_; }
  bool is_exact() const noexcept { return !trunc_.has_value(); }
  bool is_zero() const noexcept { return coeffs_.empty(); }

  OneVarSeries& operator+=(const OneVarSeries& rhs);
  OneVarSeries& operator-=(const OneVarSeries& rhs);
  OneVarSeries& operator*=(const OneVarSeries& rhs);
  friend OneVarSeries operator+(OneVarSeries a, const OneVarSeries& b) { return a += b; }
  friend OneVarSeries operator-(OneVarSeries a, const OneVarSeries& b) { return a -= b; }
  friend OneVarSeries operator*(OneVarSeries a, const OneVarSeries& b) { return a *= b; }
  OneVarSeries operator-() const;
  OneVarSeries scaled(const mpz_class& c) const;
  /// Re-truncates at D (never extends a truncated series).
  OneVarSeries truncated(int d) const;

  bool operator==(const OneVarSeries& other) const;

 private:
  void normalize();

  ContextPtr ctx_;
  poly::Coeffs coeffs_;
  std::optional<int> trunc_;
};

/// A power series in T_p, T_q over Z/p^N, stored sparsely. Truncation degrees
/// (D_p, D_q) have the same meaning as for OneVarSeries.
class TwoVarSeries {
 public:
  using Index = std::pair<int, int>;
  using Truncation = std::optional<std::pair<int, int>>;

  explicit TwoVarSeries(ContextPtr ctx, Truncation trunc = std::nullopt);
  static TwoVarSeries constant(ContextPtr ctx, const mpz_class& c);
  static TwoVarSeries monomial(ContextPtr ctx, int i, int j, const mpz_class& c = 1);
  /// f(T_p) or f(T_q).
  static TwoVarSeries in_tp(const OneVarSeries& f);
  static TwoVarSeries in_tq(const OneVarSeries& f);

  const ContextPtr& context() const noexcept { return ctx_; }
  const std::map<Index, mpz_class>& terms() const noexcept { return terms_; }
  const Truncation& truncation() const noexcept { return trunc_; }
  bool is_exact() const noexcept { return !trunc_.has_value(); }
  bool is_zero() const noexcept { return terms_.empty(); }
  mpz_class coefficient(int i, int j) const;
  void set(int i, int j, const mpz_class& c);
  /// Largest exponents present in T_p and T_q.
  std::pair<int, int> bidegree() const;

  TwoVarSeries& operator+=(const TwoVarSeries& rhs);
  TwoVarSeries& operator-=(const TwoVarSeries& rhs);
  TwoVarSeries& operator*=(const TwoVarSeries& rhs);
  friend TwoVarSeries operator+(TwoVarSeries a, const TwoVarSeries& b) { return a += b; }
  friend TwoVarSeries operator-(TwoVarSeries a, const TwoVarSeries& b) { return a -= b; }
  friend TwoVarSeries operator*(TwoVarSeries a, const TwoVarSeries& b) { return a *= b; }
  TwoVarSeries operator-() const;
  TwoVarSeries scaled(const mpz_class& c) const;

  bool operator==(const TwoVarSeries& other) const;

 private:
  void drop_beyond_truncation();

  ContextPtr ctx_;
  std::map<Index, mpz_class> terms_;
  Truncation trunc_;
};

/// (1+X)^(p^n) - 1.
OneVarSeries omega(ContextPtr ctx, int n);
/// omega_n / omega_(n-1) = Psi_(p^n)(1+X).
OneVarSeries phi_poly(ContextPtr ctx, int n);
/// X * prod_{1<=i<=n, i even} Phi_i for sign +1, odd i for sign -1.
OneVarSeries omega_pm(ContextPtr ctx, int n, int sign);

/// Exact integer versions of the standard polynomials, for identity checks.
poly::Coeffs omega_exact(unsigned p, int n);
poly::Coeffs phi_poly_exact(unsigned p, int n);
poly::Coeffs omega_pm_exact(unsigned p, int n, int sign);

/// f(zeta^k - 1) in the ring at `level`. A truncated f must have D + 1 >= tau * phi(p^level).
CyclotomicNumber eval_at_root(const OneVarSeries& f, int level, std::int64_t k);
/// F(w1 - 1, w2 - 1) at a concrete pair.
CyclotomicNumber eval_at_point(const TwoVarSeries& f, const CharacterPoint& w);
/// F at the canonical representative of the class, in the ring at level max(r,s).
CyclotomicNumber eval_at_character(const TwoVarSeries& f, const CharacterClass& theta);
/// One-variable evaluation at the T_p root of the class.
CyclotomicNumber eval_at_character(const OneVarSeries& f, const CharacterClass& theta);

/// Smallest truncation degree whose discarded tail is numerically zero at `level`.
int required_truncation(const Context& ctx, int level);

struct WeierstrassFactors {
  int mu = 0;                 // f = p^mu * unit * distinguished
  OneVarSeries unit;
  OneVarSeries distinguished; // monic of degree lambda, lower coefficients divisible by p
  int lambda() const { return distinguished.degree(); }
};

/// Weierstrass preparation modulo (p^N, T^(D+1)). An exact polynomial input is
/// treated as known to degree `unit_trunc` (default: 2 * degree + 8) for the unit.
WeierstrassFactors weierstrass_prepare(const OneVarSeries& f,
                                       std::optional<int> unit_trunc = std::nullopt);

/// Power series inverse of a unit series modulo T^(d+1).
OneVarSeries inverse_series(const OneVarSeries& u, int d);

}  // namespace iwasawa
