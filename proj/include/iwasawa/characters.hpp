#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace iwasawa {

/// Galois-conjugacy class of a pair (w1, w2) of roots of unity of exact orders
/// (p^r, p^s). The canonical representative lives at level M = max(r, s):
///   r >= s: w1 = zeta_M,                 w2 = zeta_M^(e p^(M-s))
///   r <  s: w1 = zeta_M^(e p^(M-r)),     w2 = zeta_M
/// with e a unit modulo p^min(r,s), and e = 0 when min(r,s) = 0.
struct CharacterClass {
  int r = 0;
  int s = 0;
  std::int64_t e = 0;

  int level() const noexcept { return r > s ? r : s; }
  bool boundary() const noexcept { return r == 0 || s == 0; }
  auto operator<=>(const CharacterClass&) const = default;

  /// "r,s,e", or "r,s" when min(r,s) = 0.
  std::string to_string() const;
};

/// A concrete pair w1 = zeta^k1, w2 = zeta^k2 with zeta a fixed primitive p^level root.
struct CharacterPoint {
  int level = 0;
  std::int64_t k1 = 0;
  std::int64_t k2 = 0;
};

CharacterPoint realize(unsigned p, const CharacterClass& c);

/// Class of the pair (zeta_M^k1, zeta_M^k2).
CharacterClass classify(unsigned p, const CharacterPoint& w);

/// The same pair conjugated by u in (Z/p^level)^*.
CharacterPoint conjugate(unsigned p, const CharacterPoint& w, std::int64_t u);

/// phi(p^max(r,s)), or 1 for the trivial class.
std::int64_t class_degree(unsigned p, const CharacterClass& c);

/// Every class with max(r,s) <= n, ordered by (r, s, e).
std::vector<CharacterClass> enumerate_classes(unsigned p, int n);

/// Classes with max(r,s) = n.
std::vector<CharacterClass> new_classes(unsigned p, int n);

/// Parses "r,s,e" or "r,s" and canonicalizes e.
CharacterClass parse_class(unsigned p, const std::string& text);

}  // namespace iwasawa
