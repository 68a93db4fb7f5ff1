#include "iwasawa/characters.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <tuple>

#include "iwasawa/error.hpp"
#include "iwasawa/padic.hpp"

namespace iwasawa {

namespace {

std::int64_t mod(std::int64_t a, std::int64_t m) {
  a %= m;
  return a < 0 ? a + m : a;
}

// Exact p-adic order of k modulo p^level, returned as the order exponent of zeta^k.
int root_order(unsigned p, int level, std::int64_t k) {
  const std::int64_t n = ipow(p, level);
  k = mod(k, n);
  if (k == 0) return 0;
  int v = 0;
  while (k % p == 0) {
    k /= p;
    ++v;
  }
  return level - v;
}

std::int64_t inverse_mod(std::int64_t a, std::int64_t m) {
  std::int64_t t = 0, nt = 1, r = m, nr = mod(a, m);
  while (nr != 0) {
    const std::int64_t q = r / nr;
    std::tie(t, nt) = std::make_pair(nt, t - q * nt);
    std::tie(r, nr) = std::make_pair(nr, r - q * nr);
  }
  return mod(t, m);
}

}  // namespace

std::string CharacterClass::to_string() const {
  std::ostringstream os;
  os << r << ',' << s;
  if (r > 0 && s > 0) os << ',' << e;
  return os.str();
}

CharacterPoint realize(unsigned p, const CharacterClass& c) {
  const int m = c.level();
  CharacterPoint w{m, 0, 0};
  if (m == 0) return w;
  if (c.r >= c.s) {
    w.k1 = 1;
    w.k2 = c.s == 0 ? 0 : c.e * ipow(p, m - c.s);
  } else {
    w.k2 = 1;
    w.k1 = c.r == 0 ? 0 : c.e * ipow(p, m - c.r);
  }
  return w;
}

CharacterClass classify(unsigned p, const CharacterPoint& w) {
  CharacterClass c{root_order(p, w.level, w.k1), root_order(p, w.level, w.k2), 0};
  const int m = c.level();
  if (c.r == 0 || c.s == 0) return c;
  // Rescale to level m, then normalize the dominant root to zeta_m.
  const std::int64_t drop = ipow(p, w.level - m);
  const std::int64_t n = ipow(p, m);
  const std::int64_t k1 = mod(w.k1, ipow(p, w.level)) / drop;
  const std::int64_t k2 = mod(w.k2, ipow(p, w.level)) / drop;
  if (c.r >= c.s) {
    const std::int64_t u = inverse_mod(k1, n);
    c.e = mod(k2 * u, n) / ipow(p, m - c.s);
  } else {
    const std::int64_t u = inverse_mod(k2, n);
    c.e = mod(k1 * u, n) / ipow(p, m - c.r);
  }
  return c;
}

CharacterPoint conjugate(unsigned p, const CharacterPoint& w, std::int64_t u) {
  const std::int64_t n = ipow(p, w.level);
  return {w.level, mod(w.k1 * u, n), mod(w.k2 * u, n)};
}

std::int64_t class_degree(unsigned p, const CharacterClass& c) { return totient_pow(p, c.level()); }

std::vector<CharacterClass> new_classes(unsigned p, int n) {
  if (n < 0) throw InvalidInput("negative level");
  std::vector<CharacterClass> out;
  for (int r = 0; r <= n; ++r) {
    for (int s = 0; s <= n; ++s) {
      if (std::max(r, s) != n) continue;
      const int lo = std::min(r, s);
      if (lo == 0) {
        out.push_back({r, s, 0});
        continue;
      }
      const std::int64_t q = ipow(p, lo);
      for (std::int64_t e = 1; e < q; ++e) {
        if (e % p != 0) out.push_back({r, s, e});
      }
    }
  }
  return out;
}

std::vector<CharacterClass> enumerate_classes(unsigned p, int n) {
  std::vector<CharacterClass> out;
  for (int m = 0; m <= n; ++m) {
    auto level = new_classes(p, m);
    out.insert(out.end(), level.begin(), level.end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

CharacterClass parse_class(unsigned p, const std::string& text) {
  std::vector<std::int64_t> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      parts.push_back(std::stoll(item, &used));
      if (used != item.size()) throw InvalidInput("");
    } catch (const std::exception&) {
      throw InvalidInput("malformed character class '" + text + "'");
    }
  }
  if (parts.size() < 2 || parts.size() > 3 || parts[0] < 0 || parts[1] < 0) {
    throw InvalidInput("character class must be 'r,s' or 'r,s,e', got '" + text + "'");
  }
  CharacterClass c{static_cast<int>(parts[0]), static_cast<int>(parts[1]), 0};
  const int lo = std::min(c.r, c.s);
  if (lo == 0) {
    if (parts.size() == 3 && parts[2] != 0) throw InvalidInput("e must be omitted when min(r,s) = 0");
    return c;
  }
  if (parts.size() != 3) throw InvalidInput("e is required when r,s >= 1");
  const std::int64_t q = ipow(p, lo);
  c.e = mod(parts[2], q);
  if (c.e % p == 0) throw InvalidInput("e must be a unit modulo p^min(r,s)");
  return c;
}

}  // namespace iwasawa
