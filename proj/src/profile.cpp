#include "iwasawa/profile.hpp"

#include <array>

#include "iwasawa/error.hpp"
#include "iwasawa/parallel.hpp"

namespace iwasawa {

namespace {

using Q = Valuation::Rational;

Q det3(const std::array<std::array<Q, 3>, 3>& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

std::array<Q, 3> row(unsigned p, const ProfilePoint& pt) {
  return {Q(1), Q(1, totient_pow(p, pt.r)), Q(1, totient_pow(p, pt.s))};
}

}  // namespace

std::optional<std::array<long, 3>> fit_region(unsigned p, const std::vector<ProfilePoint>& pts) {
  for (const auto& pt : pts) {
    if (!pt.valuation) return std::nullopt;
  }
  const std::size_t n = pts.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (std::size_t k = j + 1; k < n; ++k) {
        std::array<std::array<Q, 3>, 3> m{row(p, pts[i]), row(p, pts[j]), row(p, pts[k])};
        const Q d = det3(m);
        if (d.numerator() == 0) continue;
        const std::array<Q, 3> rhs{pts[i].valuation->value(), pts[j].valuation->value(),
                                   pts[k].valuation->value()};
        std::array<long, 3> sol{};
        for (int col = 0; col < 3; ++col) {
          auto mc = m;
          for (int r = 0; r < 3; ++r) mc[r][col] = rhs[r];
          const Q x = det3(mc) / d;
          if (x.denominator() != 1) return std::nullopt;
          sol[col] = static_cast<long>(x.numerator());
        }
        for (const auto& pt : pts) {
          const auto rw = row(p, pt);
          if (rw[0] * sol[0] + rw[1] * sol[1] + rw[2] * sol[2] != pt.valuation->value()) return std::nullopt;
        }
        return sol;
      }
    }
  }
  return std::nullopt;  // fewer than three independent points
}

ProfileFit valuation_profile(const TwoVarSeries& f, const ProfileGrid& grid, unsigned threads) {
  if (f.is_zero()) throw InvalidInput("valuation_profile of the zero series");
  if (grid.r_max < 1 || grid.s_max < 1 || grid.min_gap < 0) throw InvalidInput("empty profile grid");
  const unsigned p = f.context()->prime();

  std::vector<std::pair<int, int>> cells;
  for (int r = 1; r <= grid.r_max; ++r) {
    for (int s = 1; s <= grid.s_max; ++s) cells.emplace_back(r, s);
  }
  ProfileFit fit;
  fit.points = ordered_map(cells.size(), threads, [&](std::size_t idx) {
    const auto [r, s] = cells[idx];
    ProfilePoint pt{r, s, std::nullopt};
    const CyclotomicNumber v = eval_at_character(f, CharacterClass{r, s, 1});
    const ZeroTest z = zero_test(v);
    if (!z.numerically_zero) pt.valuation = z.valuation;
    return pt;
  });

  const int top = std::max(grid.r_max, grid.s_max);
  for (int n0 = 1; n0 <= top; ++n0) {
    for (int gap = grid.min_gap; gap <= top; ++gap) {
      std::vector<ProfilePoint> first, second;
      for (const auto& pt : fit.points) {
        if (pt.r < n0 || pt.s < n0) continue;
        if (pt.r > pt.s + gap) first.push_back(pt);
        if (pt.s > pt.r + gap) second.push_back(pt);
      }
      if (first.size() < 3 || second.size() < 3) break;
      const auto f1 = fit_region(p, first);
      const auto f2 = fit_region(p, second);
      if (!f1 || !f2 || (*f1)[0] != (*f2)[0]) continue;
      fit.a = (*f1)[0];
      fit.b1 = (*f1)[1];
      fit.c1 = (*f1)[2];
      fit.b2 = (*f2)[1];
      fit.c2 = (*f2)[2];
      fit.n0 = n0;
      fit.gap = gap;
      fit.residual_ok = true;
      return fit;
    }
  }
  return fit;
}

}  // namespace iwasawa
