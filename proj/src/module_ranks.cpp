#include "iwasawa/module_ranks.hpp"

#include <algorithm>
#include <cmath>

#include "iwasawa/error.hpp"
#include "iwasawa/parallel.hpp"

namespace iwasawa {

namespace {

using Grid = std::vector<mpz_class>;  // p^n x p^n coefficients, index i * q + j

// In-place reduction of x * T modulo the monic omega (one axis of the grid).
struct Reducer {
  const Context& ctx;
  std::int64_t q;          // p^n
  poly::Coeffs omega;      // omega_n, monic of degree q

  // Multiplies the grid by T_p (axis 0) or T_q (axis 1) and reduces.
  void shift(Grid& g, int axis) const {
    Grid out(g.size(), 0);
    for (std::int64_t a = 0; a < q; ++a) {
      for (std::int64_t b = 0; b < q; ++b) {
        const mpz_class& c = g[a * q + b];
        if (c == 0) continue;
        const std::int64_t i = axis == 0 ? a + 1 : a;
        const std::int64_t j = axis == 0 ? b : b + 1;
        if (i < q && j < q) {
          out[i * q + j] += c;
          continue;
        }
        // T^q = -(omega - T^q)
        for (std::int64_t t = 0; t < q; ++t) {
          if (omega[t] == 0) continue;
          const std::int64_t ii = axis == 0 ? t : a;
          const std::int64_t jj = axis == 0 ? b : t;
          mpz_submul(out[ii * q + jj].get_mpz_t(), c.get_mpz_t(), omega[t].get_mpz_t());
        }
      }
    }
    for (auto& c : out) ctx.reduce(c);
    g = std::move(out);
  }

  // Reduces a polynomial in one variable of arbitrary degree modulo omega.
  poly::Coeffs reduce(poly::Coeffs f) const {
    for (std::int64_t d = static_cast<std::int64_t>(f.size()) - 1; d >= q; --d) {
      ctx.reduce(f[d]);
      if (f[d] == 0) continue;
      const mpz_class c = f[d];
      for (std::int64_t t = 0; t < q; ++t) mpz_submul(f[d - q + t].get_mpz_t(), c.get_mpz_t(), omega[t].get_mpz_t());
      f[d] = 0;
    }
    f.resize(static_cast<std::size_t>(q), 0);
    for (auto& c : f) ctx.reduce(c);
    return f;
  }

  Grid reduce(const TwoVarSeries& s) const {
    std::map<int, poly::Coeffs> rows;
    for (const auto& [ij, c] : s.terms()) {
      auto& row = rows[ij.first];
      if (row.size() <= static_cast<std::size_t>(ij.second)) row.resize(ij.second + 1, 0);
      row[ij.second] = c;
    }
    // Reduce in T_q row by row, then in T_p column by column.
    std::vector<poly::Coeffs> cols(static_cast<std::size_t>(q));
    for (auto& [i, row] : rows) {
      const poly::Coeffs r = reduce(row);
      for (std::int64_t j = 0; j < q; ++j) {
        auto& col = cols[j];
        if (col.size() <= static_cast<std::size_t>(i)) col.resize(i + 1, 0);
        col[i] += r[j];
      }
    }
    Grid g(static_cast<std::size_t>(q * q), 0);
    for (std::int64_t j = 0; j < q; ++j) {
      const poly::Coeffs c = reduce(cols[j]);
      for (std::int64_t i = 0; i < q; ++i) g[i * q + j] = c[i];
    }
    return g;
  }
};

void note_pivot(const Context& ctx, int v, RankResult& out) {
  if (v >= ctx.threshold()) {
    throw PrecisionExhausted("elimination pivot of valuation " + std::to_string(v) +
                             " cannot be told apart from zero below p^" + std::to_string(ctx.threshold()));
  }
  if (v >= ctx.threshold() - 4) out.precision_sensitive = true;
}

// Rank over Q_p of an integral matrix known modulo p^N; exact zeros are zeros.
RankResult zp_rank(std::vector<std::vector<mpz_class>> rows, std::size_t cols, const Context& ctx) {
  RankResult out;
  const mpz_class& mod = ctx.modulus();
  std::size_t top = 0;
  std::vector<bool> used(cols, false);
  while (top < rows.size()) {
    int best = ctx.precision();
    std::size_t br = 0, bc = 0;
    for (std::size_t r = top; r < rows.size() && best > 0; ++r) {
      for (std::size_t c = 0; c < cols; ++c) {
        if (used[c] || rows[r][c] == 0) continue;
        const int v = ctx.valuation(rows[r][c]);
        if (v < best) {
          best = v;
          br = r;
          bc = c;
          if (v == 0) break;
        }
      }
    }
    if (best >= ctx.precision()) break;  // everything left is exactly zero
    note_pivot(ctx, best, out);
    std::swap(rows[top], rows[br]);
    used[bc] = true;
    // pivot = p^best * u
    mpz_class pv;
    mpz_ui_pow_ui(pv.get_mpz_t(), ctx.prime(), static_cast<unsigned long>(best));
    mpz_class u = rows[top][bc];
    mpz_divexact(u.get_mpz_t(), u.get_mpz_t(), pv.get_mpz_t());
    const mpz_class uinv = ctx.inverse(u);
    for (std::size_t r = top + 1; r < rows.size(); ++r) {
      if (rows[r][bc] == 0) continue;
      mpz_class f = rows[r][bc];
      mpz_divexact(f.get_mpz_t(), f.get_mpz_t(), pv.get_mpz_t());
      f *= uinv;
      f %= mod;
      for (std::size_t c = 0; c < cols; ++c) {
        if (rows[top][c] == 0) continue;
        mpz_submul(rows[r][c].get_mpz_t(), f.get_mpz_t(), rows[top][c].get_mpz_t());
        ctx.reduce(rows[r][c]);
      }
    }
    ++top;
    ++out.rank;
  }
  return out;
}

}  // namespace

void LambdaPresentation::validate() const {
  if (!ctx) throw InvalidInput("presentation without a context");
  if (generators < 1) throw InvalidInput("presentation needs at least one generator");
  for (const auto& rel : relations) {
    if (static_cast<int>(rel.size()) != generators) {
      throw InvalidInput("relation of length " + std::to_string(rel.size()) + " for " + std::to_string(generators) +
                         " generators");
    }
    for (const auto& s : rel) {
      if (!(*s.context() == *ctx)) throw InvalidInput("relation series with a different context");
    }
  }
}

LambdaPresentation direct_sum(const LambdaPresentation& a, const LambdaPresentation& b) {
  a.validate();
  b.validate();
  if (!(*a.ctx == *b.ctx)) throw InvalidInput("direct sum of presentations with different contexts");
  LambdaPresentation out{a.ctx, a.generators + b.generators, {}};
  for (const auto& rel : a.relations) {
    auto row = rel;
    for (int i = 0; i < b.generators; ++i) row.emplace_back(a.ctx);
    out.relations.push_back(std::move(row));
  }
  for (const auto& rel : b.relations) {
    std::vector<TwoVarSeries> row;
    for (int i = 0; i < a.generators; ++i) row.emplace_back(a.ctx);
    row.insert(row.end(), rel.begin(), rel.end());
    out.relations.push_back(std::move(row));
  }
  return out;
}

RankResult coinv_rank_direct(const LambdaPresentation& m, int n, std::int64_t size_cap) {
  m.validate();
  if (n < 0) throw InvalidInput("level must be non-negative");
  const Context& ctx = *m.ctx;
  const std::int64_t q = ipow(ctx.prime(), n);
  const std::int64_t block = q * q;
  if (block * m.generators > size_cap) {
    throw SizeCapExceeded("direct coinvariant rank needs p^(2n) g = " + std::to_string(block * m.generators) +
                          " > cap " + std::to_string(size_cap));
  }
  for (const auto& rel : m.relations) {
    for (const auto& s : rel) {
      if (!s.truncation()) continue;
      // Same tail bound as evaluation at roots of order p^n.
      if (n > 0 && std::min(s.truncation()->first, s.truncation()->second) < required_truncation(ctx, n)) {
        throw TruncationInsufficient("relation truncation too small for level " + std::to_string(n));
      }
    }
  }
  const Reducer red{ctx, q, omega(m.ctx, n).coefficients()};
  const std::size_t cols = static_cast<std::size_t>(block * m.generators);
  std::vector<std::vector<mpz_class>> rows;
  for (const auto& rel : m.relations) {
    std::vector<Grid> base;
    for (const auto& s : rel) base.push_back(red.reduce(s));
    for (std::int64_t a = 0; a < q; ++a) {
      std::vector<Grid> cur = base;
      for (std::int64_t b = 0; b < q; ++b) {
        std::vector<mpz_class> row(cols, 0);
        bool nonzero = false;
        for (int g = 0; g < m.generators; ++g) {
          for (std::int64_t t = 0; t < block; ++t) {
            row[g * block + t] = cur[g][t];
            nonzero = nonzero || cur[g][t] != 0;
          }
        }
        if (nonzero) rows.push_back(std::move(row));
        if (b + 1 < q) {
          for (auto& gr : cur) red.shift(gr, 1);
        }
      }
      if (a + 1 < q) {
        for (auto& gr : base) red.shift(gr, 0);
      }
    }
  }
  RankResult r = zp_rank(std::move(rows), cols, ctx);
  r.rank = static_cast<std::int64_t>(cols) - r.rank;
  return r;
}

RankResult cyclotomic_rank(std::vector<std::vector<CyclotomicNumber>> rows) {
  RankResult out;
  if (rows.empty()) return out;
  const std::size_t cols = rows.front().size();
  const ContextPtr ctx = rows.front().front().context();
  std::vector<bool> used(cols, false);
  std::size_t top = 0;
  while (top < rows.size()) {
    std::optional<Valuation> best;
    std::size_t br = 0, bc = 0;
    for (std::size_t r = top; r < rows.size(); ++r) {
      for (std::size_t c = 0; c < cols; ++c) {
        if (used[c] || rows[r][c].is_zero()) continue;
        const Valuation v = valuation_by_uniformizer(rows[r][c]);
        if (!best || v < *best) {
          best = v;
          br = r;
          bc = c;
        }
      }
    }
    if (!best) break;
    const ZeroTest z = zero_test(rows[br][bc]);
    if (z.numerically_zero) {
      throw PrecisionExhausted("pivot of valuation " + best->to_string() + " is numerically zero");
    }
    out.precision_sensitive = out.precision_sensitive || z.precision_sensitive;
    std::swap(rows[top], rows[br]);
    used[bc] = true;
    const CyclotomicNumber pivot = rows[top][bc];
    for (std::size_t r = top + 1; r < rows.size(); ++r) {
      if (rows[r][bc].is_zero()) continue;
      // Fraction-free step: no division, so exact zeros stay exact.
      const CyclotomicNumber f = rows[r][bc];
      for (std::size_t c = 0; c < cols; ++c) rows[r][c] = pivot * rows[r][c] - f * rows[top][c];
    }
    ++top;
    ++out.rank;
  }
  return out;
}

RankResult coinv_rank_charsum(const LambdaPresentation& m, int n, unsigned threads) {
  m.validate();
  if (n < 0) throw InvalidInput("level must be non-negative");
  const auto classes = enumerate_classes(m.ctx->prime(), n);
  const auto per_class = ordered_map(classes.size(), threads, [&](std::size_t idx) {
    std::vector<std::vector<CyclotomicNumber>> rows;
    for (const auto& rel : m.relations) {
      std::vector<CyclotomicNumber> row;
      for (const auto& s : rel) row.push_back(eval_at_character(s, classes[idx]));
      rows.push_back(std::move(row));
    }
    RankResult r = cyclotomic_rank(std::move(rows));
    r.rank = class_degree(m.ctx->prime(), classes[idx]) * (m.generators - r.rank);
    return r;
  });
  RankResult total;
  for (const auto& r : per_class) {
    total.rank += r.rank;
    total.precision_sensitive = total.precision_sensitive || r.precision_sensitive;
  }
  return total;
}

RankFit harris_fit(const LambdaPresentation& m, int n_max, unsigned threads) {
  if (n_max < 0) throw InvalidInput("n_max must be non-negative");
  RankFit fit;
  const std::int64_t p = m.ctx->prime();
  for (int n = 0; n <= n_max; ++n) {
    const RankResult r = coinv_rank_charsum(m, n, threads);
    fit.ranks.emplace_back(n, r.rank);
    fit.precision_sensitive = fit.precision_sensitive || r.precision_sensitive;
  }
  using Q = Valuation::Rational;
  const std::int64_t top = ipow(p, 2 * n_max);
  Q r(fit.ranks.back().second, top);
  // Snap to an integer when within p^(-n_max).
  const std::int64_t nearest = (r.numerator() * 2 + r.denominator()) / (2 * r.denominator());
  Q dist = r - Q(nearest);
  if (dist < Q(0)) dist = -dist;
  if (dist <= Q(1, ipow(p, n_max))) r = Q(nearest);
  fit.r_numerator = r.numerator();
  fit.r_denominator = r.denominator();
  for (const auto& [n, rank] : fit.ranks) {
    Q dev = Q(rank) - r * Q(ipow(p, 2 * n));
    if (dev < Q(0)) dev = -dev;
    fit.residual = std::max(fit.residual, dev / Q(ipow(p, n)));
  }
  return fit;
}

}  // namespace iwasawa
