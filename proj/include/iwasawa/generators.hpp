#pragma once

#include <cstdint>
#include <string>

#include "iwasawa/module_ranks.hpp"
#include "iwasawa/rank_estimator.hpp"
#include "iwasawa/series.hpp"

namespace iwasawa::gen {

/// Seeded inputs for tests and the CLI. Draws come straight from mt19937_64 so the
/// same seed gives the same objects on every platform.

/// Integer polynomial in T_p, T_q of bidegree <= (deg, deg), coefficients in [-bound, bound].
TwoVarSeries random_polynomial(const ContextPtr& ctx, std::uint64_t seed, int deg = 3, long bound = 9);

/// Lambda / (f) with f a non-zero random polynomial.
LambdaPresentation random_cyclic_module(const ContextPtr& ctx, std::uint64_t seed, int deg = 3);

/// Lambda / (g h): g random of bidegree <= (2, 2), h the (seed mod 5)-th of T_p, T_q,
/// Phi_1(T_p), Phi_1(T_q), T_p T_q.
LambdaPresentation random_torsion_module(const ContextPtr& ctx, std::uint64_t seed);

/// p^a T_p^b T_q^c u + p^(a+1) g with u(0,0) a unit; returns (a, b, c) through the out-params.
TwoVarSeries random_profile_series(const ContextPtr& ctx, std::uint64_t seed, long* a = nullptr, long* b = nullptr,
                                   long* c = nullptr);

/// kind: "sharp-unit" (only det(sharp,sharp) = 1), "phi1" (Col_{p,sharp}(c1) = Phi_1(T_p),
/// Col_{q,sharp}(c2) = 1), "unit-dets" (all four determinants 1), "random".
ColemanScenario scenario(const ContextPtr& ctx, long ap, const std::string& kind, std::uint64_t seed = 0);

}  // namespace iwasawa::gen
