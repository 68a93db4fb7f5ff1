#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "iwasawa/characters.hpp"
#include "iwasawa/log_matrix.hpp"
#include "iwasawa/series.hpp"

namespace iwasawa {

enum class Prime { p = 0, q = 1 };
enum class Sign { sharp = 0, flat = 1 };

/// Coleman-image data for two classes c1, c2 at the two primes, with a_p.
struct ColemanScenario {
  ContextPtr ctx;
  long ap = 0;
  bool twist = false;
  // col[prime][sign][cls]
  std::array<std::array<std::array<std::optional<TwoVarSeries>, 2>, 2>, 2> col;

  const TwoVarSeries& at(Prime pr, Sign sg, int cls) const;
  TwoVarSeries& at(Prime pr, Sign sg, int cls);

  /// Fills missing entries with 0, checks a_p and the torsion condition
  /// (some det_col is a non-zero series).
  void validate();
};

/// Col_{p,a}(c1) Col_{q,b}(c2) - Col_{p,a}(c2) Col_{q,b}(c1).
TwoVarSeries det_col(const ColemanScenario& sc, Sign a, Sign b);

/// The four-term value sum_{a,b} H_{p,a,r}(w1) H_{q,b,s}(w2) det_col(a,b)(theta), with
/// the twist by w2^-1 (prime p) and w1^-1 (prime q) when enabled.
CyclotomicNumber underline_col_det_at(const ColemanScenario& sc, const CharacterClass& theta);

/// Per-prime values Col-underline_{p,r}(c_i)(theta), Col-underline_{q,s}(c_i)(theta), i = 1, 2.
std::array<std::array<CyclotomicNumber, 2>, 2> underline_col_values(const ColemanScenario& sc,
                                                                    const CharacterClass& theta);

enum class Verdict { nonvanishing, vanishing_rank_1, vanishing_rank_2, indeterminate };
const char* to_string(Verdict v);

struct VanishingVerdict {
  CharacterClass theta;
  // Summand valuations in the order (sharp,sharp), (sharp,flat), (flat,sharp), (flat,flat);
  // empty when the determinant value is numerically zero.
  std::array<std::optional<Valuation>, 4> summands;
  bool distinct = true;
  std::optional<Valuation> total;  // empty when numerically zero
  Verdict verdict = Verdict::nonvanishing;
  bool precision_sensitive = false;

  /// 0, 1 or 2; indeterminate counts as 2.
  int rank() const;
};

/// The valuation part of the verdict.
VanishingVerdict summand_valuations(const ColemanScenario& sc, const CharacterClass& theta);

VanishingVerdict vanishing_test(const ColemanScenario& sc, const CharacterClass& theta);

/// Classes of new_classes(p, n) (r, s >= 1) whose verdict is not nonvanishing.
std::vector<CharacterClass> count_xi(const ColemanScenario& sc, int n, unsigned threads = 0);

struct LevelReport {
  int n = 0;
  std::vector<VanishingVerdict> xi;              // members of Xi_n
  std::vector<CharacterClass> boundary;          // new classes with r = 0 or s = 0, not counted
  std::int64_t c_n = 0;                          // |Xi_n|
  std::int64_t jump_bound = 0;                   // sum over Xi_n of 2 deg
  std::int64_t cumulative = 0;                   // B_n, with B_0 = 0
  std::int64_t jump_cap = 0;                     // 2 C_n phi(p^n)
  int indeterminate = 0;
  bool precision_sensitive = false;
};

struct RankReport {
  unsigned p = 0;
  long ap = 0;
  int precision = 0;
  bool twist = false;
  std::vector<LevelReport> levels;
  std::int64_t max_c_n = 0;
  Valuation::Rational growth_constant{0};  // smallest C with B_n <= C p^n
};

RankReport cumulative_bound(const ColemanScenario& sc, int n_max, unsigned threads = 0);

}  // namespace iwasawa
