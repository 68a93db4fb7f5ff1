#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "iwasawa/cyclotomic.hpp"
#include "iwasawa/series.hpp"

namespace iwasawa {

/// Reading of "first row of C_n ... C_1": which end the product starts from,
/// whether the Phi indices run forwards or backwards, and which entry is sharp.
struct Convention {
  enum class Order { descending, ascending };
  enum class Index { forward, reversed };
  enum class Pairing { identity, swapped };

  Order order = Order::descending;
  Index index = Index::forward;
  Pairing pairing = Pairing::identity;

  std::string tag() const;
  bool operator==(const Convention&) const = default;
  static std::vector<Convention> all();
};

inline constexpr Convention kDefaultConvention{};

/// 2x2 matrix of polynomials in X, row-major.
using PolyMatrix = std::array<OneVarSeries, 4>;

struct CMatrix {
  int n = 0;
  long ap = 0;
  PolyMatrix entries;  // [[a_p, 1], [Phi_n, 0]]
};

/// Validates p | a_p, a_p != 0.
void check_ap(unsigned p, long ap);

CMatrix c_matrix(ContextPtr ctx, long ap, int n);

struct HRow {
  int n = 0;
  OneVarSeries sharp;
  OneVarSeries flat;
  Convention convention;
};

HRow h_row(ContextPtr ctx, long ap, int n, const Convention& conv = kDefaultConvention);

struct HValues {
  CyclotomicNumber sharp;
  CyclotomicNumber flat;
};

/// (H_sharp, H_flat) at X = zeta^k - 1 in the ring at `level`, from the product of
/// evaluated C-matrices (Phi_j(zeta^k - 1) = Psi_(p^j)(zeta^k) costs p additions).
HValues h_row_at(ContextPtr ctx, long ap, int n, int level, std::int64_t k,
                 const Convention& conv = kDefaultConvention);

using ValuationPair = std::pair<Valuation, Valuation>;

/// Valuations of H_sharp, H_flat at a primitive p^n-th root (conductor p^(n+1)).
ValuationPair h_valuation_direct(ContextPtr ctx, long ap, int n, const Convention& conv = kDefaultConvention);

/// The closed-form valuations for ord_p(a_p) = 1.
ValuationPair h_valuation_formula(unsigned p, int n);

struct ConventionScore {
  Convention convention;
  std::vector<int> matching_levels;
};

struct ConventionResolution {
  Convention chosen;
  std::vector<ConventionScore> scores;  // in Convention::all() order
  std::vector<int> unresolved_levels;   // levels the chosen convention misses
};

/// Picks the candidate matching the formula at the most levels 1..n_max (first in
/// candidate order on ties).
ConventionResolution resolve_convention(ContextPtr ctx, long ap, int n_max);

/// value = p^(-shift) * entries, entries integral with no common factor p when shift > 0.
struct ScaledMatrix {
  int shift = 0;
  PolyMatrix entries;
};

/// A^(k+1) C'_k ... C'_1 where C'_j = [[a_p, 1], [phi_sign * Phi_j, 0]].
/// phi_sign = -1 is the convention under which the truncations stabilize at eta.
ScaledMatrix mlog_truncation(ContextPtr ctx, long ap, int k, int phi_sign = -1);

struct ScaledValue {
  int shift = 0;
  std::array<CyclotomicNumber, 4> entries;
};

/// Truncation value at zeta^k - 1, computed from evaluated factors.
ScaledValue mlog_truncation_at(ContextPtr ctx, long ap, int k, int level, std::int64_t root, int phi_sign = -1);

/// Evaluates a ScaledMatrix entrywise.
ScaledValue evaluate(const ScaledMatrix& m, int level, std::int64_t root);

/// Entrywise valuation of p^(-shift) x (may be negative); infinity when x is numerically zero.
std::array<Valuation, 4> scaled_valuations(const ScaledValue& v);

/// a - b brought to a common shift.
ScaledValue difference(const ScaledValue& a, const ScaledValue& b);

}  // namespace iwasawa
