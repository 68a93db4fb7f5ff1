#include <doctest.h>

#include <numeric>

#include "../support/oracles.hpp"
#include "iwasawa/characters.hpp"
#include "iwasawa/error.hpp"

using namespace iwasawa;

namespace {

std::int64_t total_degree(unsigned p, const std::vector<CharacterClass>& cs) {
  std::int64_t s = 0;
  for (const auto& c : cs) s += class_degree(p, c);
  return s;
}

}  // namespace

TEST_CASE("enumerate_classes examples") {
  auto cs = enumerate_classes(3, 0);
  REQUIRE(cs.size() == 1);
  CHECK(class_degree(3, cs[0]) == 1);
  cs = enumerate_classes(3, 1);
  REQUIRE(cs.size() == 5);
  CHECK(cs[0] == CharacterClass{0, 0, 0});
  CHECK(cs[1] == CharacterClass{0, 1, 0});
  CHECK(cs[2] == CharacterClass{1, 0, 0});
  CHECK(cs[3] == CharacterClass{1, 1, 1});
  CHECK(cs[4] == CharacterClass{1, 1, 2});
  CHECK(total_degree(3, cs) == 9);
}

TEST_CASE("partition property and orbit oracle") {
  for (unsigned p : {3u, 5u}) {
    for (int n = 0; n <= 3; ++n) {
      if (p == 5 && n == 3) continue;  // 15625 pairs is fine but slow in debug builds
      const auto cs = enumerate_classes(p, n);
      CHECK(total_degree(p, cs) == oracle::pw(p, 2 * n));
      const auto orbits = oracle::orbit_sizes(p, n);
      std::size_t count = 0;
      for (const auto& [key, sizes] : orbits) {
        count += sizes.size();
        for (const auto& c : cs) {
          if (c.r == key.first && c.s == key.second) CHECK(class_degree(p, c) == sizes.front());
        }
      }
      CHECK(cs.size() == count);
      CHECK(std::is_sorted(cs.begin(), cs.end()));
    }
  }
}

TEST_CASE("new_classes") {
  CHECK(total_degree(3, new_classes(3, 1)) == 8);
  CHECK(new_classes(3, 1).size() == 4);
  CHECK(total_degree(3, new_classes(3, 2)) == 72);
  for (int n = 1; n <= 3; ++n) {
    const auto all = enumerate_classes(3, n), prev = enumerate_classes(3, n - 1), fresh = new_classes(3, n);
    std::vector<CharacterClass> diff;
    std::set_difference(all.begin(), all.end(), prev.begin(), prev.end(), std::back_inserter(diff));
    CHECK(diff == fresh);
  }
}

TEST_CASE("class_degree examples") {
  CHECK(class_degree(3, {1, 0, 0}) == 2);
  CHECK(class_degree(3, {2, 1, 1}) == 6);
  CHECK(class_degree(3, {0, 0, 0}) == 1);
}

TEST_CASE("realize and classify are inverse; conjugates stay in the class") {
  for (const auto& c : enumerate_classes(3, 3)) {
    const auto w = realize(3, c);
    CHECK(classify(3, w) == c);
    for (std::int64_t u : {2, 4, 5, 7}) CHECK(classify(3, conjugate(3, w, u)) == c);
  }
}

TEST_CASE("class literals") {
  CHECK(parse_class(3, "1,1,1") == CharacterClass{1, 1, 1});
  CHECK(parse_class(3, "2,1,4") == CharacterClass{2, 1, 1});
  CHECK(parse_class(3, "2,0") == CharacterClass{2, 0, 0});
  CHECK(parse_class(3, "2,1,2").to_string() == "2,1,2");
  CHECK_THROWS_AS(parse_class(3, "1,1,3"), InvalidInput);
  CHECK_THROWS_AS(parse_class(3, "1,1"), InvalidInput);
  CHECK_THROWS_AS(parse_class(3, "a,b"), InvalidInput);
  CHECK_THROWS_AS(parse_class(3, "1,0,1"), InvalidInput);
}
