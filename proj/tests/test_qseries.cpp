#include "doctest.h"
#include "helpers.hpp"
#include "t3d/qseries.hpp"

using namespace th;
using t3d::qbracket;
using t3d::qfact;

TEST_CASE("q factorials") {
  CHECK(qfact(0, 2) == LaurentPoly(1));
  CHECK(qfact(2, 2) == P({{0, 1}, {2, -1}, {4, -1}, {6, 1}}));
  CHECK(qfact(1, 4) == omq(4));
  CHECK_THROWS_AS(qfact(-1, 2), std::invalid_argument);
  CHECK_THROWS_AS(qfact(1, 3), std::invalid_argument);
  for (int i = 0; i <= 15; ++i) {
    CHECK(qfact(i, 2).at_zero() == t3d::Integer(1));
    CHECK(qfact(i, 4).at_zero() == t3d::Integer(1));
  }
}

TEST_CASE("brackets") {
  CHECK(qbracket({1}, {1}, 2).as_poly() == LaurentPoly(1));
  auto r = qbracket({2}, {1, 1}, 2);
  CHECK(r.is_poly());
  CHECK(r.as_poly() == P({{0, 1}, {2, 1}}));
  CHECK(qbracket({1}, {-1, 2}, 2).is_zero());
  CHECK(qbracket({-3}, {}, 4).is_zero());
  CHECK_FALSE(qbracket({1}, {2}, 2).is_poly());
}

TEST_CASE("binomials agree with brackets") {
  for (int m = 0; m <= 12; ++m) {
    for (int r = 0; r <= m; ++r) {
      auto b = qbracket({m}, {r, m - r}, 2);
      REQUIRE(b.is_poly());
      CHECK(b.as_poly() == t3d::qbinomial(m, r, 2));
      CHECK(qbracket({m}, {r, m - r}, 4).as_poly() == t3d::qbinomial(m, r, 4));
    }
  }
  CHECK(t3d::qbinomial(3, 4, 2).is_zero());
  CHECK(t3d::qbinomial(3, -1, 2).is_zero());
  CHECK(t3d::qpoch_range(3, 5, 2) == prod({omq(6), omq(8), omq(10)}));
  CHECK(t3d::qpoch_range(3, 2, 2) == LaurentPoly(1));
}
