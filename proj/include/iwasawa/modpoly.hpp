#pragma once

#include <cstddef>
#include <vector>

#include <gmpxx.h>

#include "iwasawa/padic.hpp"

/// Dense polynomial kernels. Coefficients are stored lowest degree first.
/// Functions taking a Context work over Z/p^N with residues in [0, p^N);
/// the rest are exact over Z.
namespace iwasawa::poly {

using Coeffs = std::vector<mpz_class>;

/// Drops trailing zero coefficients.
void trim(Coeffs& a);

void add_to(Coeffs& acc, const Coeffs& b, const Context& ctx);
void sub_from(Coeffs& acc, const Coeffs& b, const Context& ctx);
void scale(Coeffs& a, const mpz_class& factor, const Context& ctx);

/// Full product modulo p^N. Large operands go through Kronecker substitution.
Coeffs multiply(const Coeffs& a, const Coeffs& b, const Context& ctx);

/// Product truncated to its first `length` coefficients.
Coeffs multiply_truncated(const Coeffs& a, const Coeffs& b, std::size_t length,
                          const Context& ctx);

/// a(X + c) modulo p^N, in O(M(n) log n).
Coeffs taylor_shift(const Coeffs& a, long c, const Context& ctx);

/// a(X + 1) modulo p^N.
Coeffs taylor_shift_one(const Coeffs& a, const Context& ctx);

/// Exact product over Z.
Coeffs multiply_exact(const Coeffs& a, const Coeffs& b);

/// Exact resultant over Z (subresultant PRS).
mpz_class resultant(Coeffs a, Coeffs b);

}  // namespace iwasawa::poly
