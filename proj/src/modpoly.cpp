#include "iwasawa/modpoly.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace iwasawa::poly {

namespace {

constexpr std::size_t kKroneckerThreshold = 24;

void add_mod(mpz_class& acc, const mpz_class& b, const mpz_class& mod) {
  acc += b;
  if (acc >= mod) acc -= mod;
}

void sub_mod(mpz_class& acc, const mpz_class& b, const mpz_class& mod) {
  acc -= b;
  if (acc < 0) acc += mod;
}

Coeffs schoolbook(const Coeffs& a, const Coeffs& b, std::size_t length, const Context& ctx) {
  Coeffs out(length, 0);
  for (std::size_t i = 0; i < a.size() && i < length; ++i) {
    if (a[i] == 0) continue;
    const std::size_t jmax = std::min(b.size(), length - i);
    for (std::size_t j = 0; j < jmax; ++j) {
      mpz_addmul(out[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
    }
  }
  for (auto& c : out) ctx.reduce(c);
  return out;
}

void pack(const Coeffs& a, std::size_t slot_limbs, mpz_class& out) {
  std::vector<mp_limb_t> buf(a.size() * slot_limbs, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    std::size_t count = 0;
    mpz_export(buf.data() + i * slot_limbs, &count, -1, sizeof(mp_limb_t), 0, 0,
               a[i].get_mpz_t());
  }
  mpz_import(out.get_mpz_t(), buf.size(), -1, sizeof(mp_limb_t), 0, 0, buf.data());
}

Coeffs kronecker(const Coeffs& a, const Coeffs& b, std::size_t length, const Context& ctx) {
  const std::size_t full = a.size() + b.size() - 1;
  const std::size_t mod_bits = mpz_sizeinbase(ctx.modulus().get_mpz_t(), 2);
  const std::size_t count_bits = mpz_sizeinbase(mpz_class(std::min(a.size(), b.size())).get_mpz_t(), 2);
  const std::size_t slot_bits = 2 * mod_bits + count_bits + 1;
  const std::size_t limb_bits = sizeof(mp_limb_t) * 8;
  const std::size_t slot_limbs = (slot_bits + limb_bits - 1) / limb_bits;

  mpz_class za, zb;
  pack(a, slot_limbs, za);
  pack(b, slot_limbs, zb);
  mpz_class prod = za * zb;

  std::vector<mp_limb_t> buf(full * slot_limbs + 1, 0);
  std::size_t count = 0;
  mpz_export(buf.data(), &count, -1, sizeof(mp_limb_t), 0, 0, prod.get_mpz_t());

  Coeffs out(length, 0);
  for (std::size_t k = 0; k < length && k < full; ++k) {
    mpz_import(out[k].get_mpz_t(), slot_limbs, -1, sizeof(mp_limb_t), 0, 0,
               buf.data() + k * slot_limbs);
    ctx.reduce(out[k]);
  }
  return out;
}

int degree(const Coeffs& a) { return static_cast<int>(a.size()) - 1; }

mpz_class content(const Coeffs& a) {
  mpz_class g = 0;
  for (const auto& c : a) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  return g;
}

mpz_class power(const mpz_class& base, long e) {
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(e));
  return r;
}

void divexact_all(Coeffs& a, const mpz_class& d) {
  for (auto& c : a) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), d.get_mpz_t());
}

// lc(B)^(degA - degB + 1) * A mod B, exact over Z.
Coeffs pseudo_remainder(Coeffs r, const Coeffs& b) {
  const int n = degree(b);
  const mpz_class& d = b.back();
  int e = degree(r) - n + 1;
  while (!r.empty() && degree(r) >= n) {
    const int shift = degree(r) - n;
    const mpz_class lead = r.back();
    for (auto& c : r) c *= d;
    for (int j = 0; j <= n; ++j) r[shift + j] -= lead * b[j];
    trim(r);
    --e;
  }
  if (e > 0) {
    const mpz_class f = power(d, e);
    for (auto& c : r) c *= f;
  }
  return r;
}

}  // namespace

void trim(Coeffs& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

void add_to(Coeffs& acc, const Coeffs& b, const Context& ctx) {
  if (acc.size() < b.size()) acc.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) add_mod(acc[i], b[i], ctx.modulus());
}

void sub_from(Coeffs& acc, const Coeffs& b, const Context& ctx) {
  if (acc.size() < b.size()) acc.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) sub_mod(acc[i], b[i], ctx.modulus());
}

void scale(Coeffs& a, const mpz_class& factor, const Context& ctx) {
  for (auto& c : a) {
    c *= factor;
    ctx.reduce(c);
  }
}

Coeffs multiply_truncated(const Coeffs& a, const Coeffs& b, std::size_t length,
                          const Context& ctx) {
  if (a.empty() || b.empty() || length == 0) return Coeffs(length, 0);
  const std::size_t full = a.size() + b.size() - 1;
  length = std::min(length, full);
  if (std::min(a.size(), b.size()) < kKroneckerThreshold) return schoolbook(a, b, length, ctx);
  // Only the first `length` coefficients of each operand can contribute.
  if (a.size() > length || b.size() > length) {
    Coeffs at(a.begin(), a.begin() + std::min(a.size(), length));
    Coeffs bt(b.begin(), b.begin() + std::min(b.size(), length));
    return kronecker(at, bt, length, ctx);
  }
  return kronecker(a, b, length, ctx);
}

Coeffs multiply(const Coeffs& a, const Coeffs& b, const Context& ctx) {
  if (a.empty() || b.empty()) return {};
  return multiply_truncated(a, b, a.size() + b.size() - 1, ctx);
}

namespace {

constexpr std::size_t kShiftBaseCase = 32;

// Shift of a[lo, lo + len) using powers[k] = (1 + cX)^(2^k); len is a power of two.
Coeffs shift_block(const Coeffs& a, std::size_t lo, std::size_t len, long c, const std::vector<Coeffs>& powers,
                   const Context& ctx) {
  const std::size_t hi = std::min(a.size(), lo + len);
  if (lo >= hi) return {};
  if (len <= kShiftBaseCase) {
    Coeffs r(a.begin() + static_cast<std::ptrdiff_t>(lo), a.begin() + static_cast<std::ptrdiff_t>(hi));
    const std::size_t n = r.size();
    for (std::size_t i = 0; i + 1 < n; ++i) {
      for (std::size_t j = n - 1; j > i; --j) {
        if (c > 0) r[j - 1] += r[j];
        else r[j - 1] -= r[j];
      }
    }
    // Entries grow by at most 2^len, so one reduction at the end suffices.
    for (auto& x : r) ctx.reduce(x);
    return r;
  }
  const std::size_t half = len / 2;
  Coeffs low = shift_block(a, lo, half, c, powers, ctx);
  Coeffs high = shift_block(a, lo + half, half, c, powers, ctx);
  if (high.empty()) return low;
  std::size_t k = 0;
  while ((std::size_t{1} << k) < half) ++k;
  Coeffs out = multiply(high, powers[k], ctx);
  add_to(out, low, ctx);
  return out;
}

}  // namespace

Coeffs taylor_shift(const Coeffs& a, long c, const Context& ctx) {
  if (a.size() < 2) return a;
  std::size_t len = 1;
  std::vector<Coeffs> powers{{1, c}};
  for (auto& x : powers[0]) ctx.reduce(x);
  while (len < a.size()) {
    len *= 2;
    powers.push_back(multiply(powers.back(), powers.back(), ctx));
  }
  Coeffs out = shift_block(a, 0, len, c, powers, ctx);
  out.resize(a.size(), 0);
  return out;
}

Coeffs taylor_shift_one(const Coeffs& a, const Context& ctx) { return taylor_shift(a, 1, ctx); }

Coeffs multiply_exact(const Coeffs& a, const Coeffs& b) {
  if (a.empty() || b.empty()) return {};
  Coeffs out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      mpz_addmul(out[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
    }
  }
  return out;
}

mpz_class resultant(Coeffs a, Coeffs b) {
  trim(a);
  trim(b);
  if (a.empty() || b.empty()) return 0;
  int sign = 1;
  if (degree(a) < degree(b)) {
    std::swap(a, b);
    if (degree(a) % 2 == 1 && degree(b) % 2 == 1) sign = -1;
  }
  const mpz_class ca = content(a);
  const mpz_class cb = content(b);
  divexact_all(a, ca);
  divexact_all(b, cb);
  const mpz_class t = power(ca, degree(b)) * power(cb, degree(a));
  mpz_class g = 1;
  mpz_class h = 1;
  while (true) {
    if (degree(b) == 0) {
      const int da = degree(a);
      if (da == 0) return sign * t;
      mpz_class res = power(b[0], da);
      mpz_class hp = power(h, da - 1);
      mpz_divexact(res.get_mpz_t(), res.get_mpz_t(), hp.get_mpz_t());
      return sign * t * res;
    }
    const int delta = degree(a) - degree(b);
    if (degree(a) % 2 == 1 && degree(b) % 2 == 1) sign = -sign;
    Coeffs r = pseudo_remainder(a, b);
    a = std::move(b);
    if (r.empty()) return 0;
    divexact_all(r, g * power(h, delta));
    b = std::move(r);
    g = a.back();
    if (delta == 0) {
      // h unchanged
    } else if (delta == 1) {
      h = g;
    } else {
      mpz_class num = power(g, delta);
      mpz_class den = power(h, delta - 1);
      mpz_divexact(h.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    }
  }
}

}  // namespace iwasawa::poly
