#pragma once

#include <array>
#include <optional>
#include <vector>

#include "iwasawa/series.hpp"

namespace iwasawa {

struct ProfilePoint {
  int r = 0;
  int s = 0;
  std::optional<Valuation> valuation;  // empty when numerically zero
};

/// ord_p F(theta) = a + b_i / phi(p^r) + c_i / phi(p^s), i = 1 on r > s + gap and
/// i = 2 on s > r + gap, for r, s >= n0.
struct ProfileFit {
  long a = 0;
  long b1 = 0, c1 = 0;
  long b2 = 0, c2 = 0;
  int n0 = 0;
  int gap = 0;
  bool residual_ok = false;
  std::vector<ProfilePoint> points;
};

struct ProfileGrid {
  int r_max = 6;
  int s_max = 6;
  int min_gap = 1;
};

/// Evaluates F on the grid 1 <= r <= r_max, 1 <= s <= s_max (e = 1 realization)
/// and searches the smallest n0, then the smallest gap, for which the law is exact.
ProfileFit valuation_profile(const TwoVarSeries& f, const ProfileGrid& grid, unsigned threads = 0);

/// Fit of one region from explicit points; empty when no integral law fits.
std::optional<std::array<long, 3>> fit_region(unsigned p, const std::vector<ProfilePoint>& pts);

}  // namespace iwasawa
