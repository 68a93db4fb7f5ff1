#pragma once

#include <cstdint>
#include <vector>

#include "iwasawa/series.hpp"

namespace iwasawa {

/// M = Lambda^g / (relations); each relation is a length-g vector of series.
struct LambdaPresentation {
  ContextPtr ctx;
  int generators = 1;
  std::vector<std::vector<TwoVarSeries>> relations;

  void validate() const;
};

/// Lambda^g1 (+) Lambda^g2 with block-diagonal relations.
LambdaPresentation direct_sum(const LambdaPresentation& a, const LambdaPresentation& b);

struct RankResult {
  std::int64_t rank = 0;
  bool precision_sensitive = false;  // some pivot sat in [tau - 4, tau)
};

inline constexpr std::int64_t kDirectSizeCap = 20000;

/// Z_p-rank of M / (omega_n(T_p), omega_n(T_q)) by elimination over Z/p^N on the
/// monomial basis T_p^i T_q^j, i, j < p^n.
RankResult coinv_rank_direct(const LambdaPresentation& m, int n, std::int64_t size_cap = kDirectSizeCap);

/// Sum over classes w with w^(p^n) = 1 of deg(w) * (g - rank of the relations at w).
RankResult coinv_rank_charsum(const LambdaPresentation& m, int n, unsigned threads = 0);

struct RankFit {
  std::int64_t r_numerator = 0;
  std::int64_t r_denominator = 1;
  std::vector<std::pair<int, std::int64_t>> ranks;  // (n, rank_n)
  Valuation::Rational residual{0};                  // max |rank_n - r p^(2n)| / p^n
  bool precision_sensitive = false;
};

RankFit harris_fit(const LambdaPresentation& m, int n_max, unsigned threads = 0);

/// Rank of a matrix over Frac Z_p[zeta] by fraction-free elimination.
RankResult cyclotomic_rank(std::vector<std::vector<CyclotomicNumber>> rows);

}  // namespace iwasawa
