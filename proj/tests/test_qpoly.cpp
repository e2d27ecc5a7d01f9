#include <random>

#include "doctest.h"
#include "t3d/qpoly.hpp"

using t3d::Integer;
using t3d::LaurentPoly;
using t3d::QRat;
using t3d::TruncPoly;

namespace {

LaurentPoly P(std::vector<t3d::Term> t) { return LaurentPoly::from_terms(std::move(t)); }

LaurentPoly random_poly(std::mt19937_64& rng, int lo, int hi, int terms, std::int64_t range) {
  std::uniform_int_distribution<int> e(lo, hi);
  std::uniform_int_distribution<std::int64_t> c(-range, range);
  std::vector<t3d::Term> out;
  for (int i = 0; i < terms; ++i) out.push_back({e(rng), c(rng)});
  return LaurentPoly::from_terms(std::move(out));
}

}  // namespace

TEST_CASE("integer promotes and demotes") {
  Integer big = Integer(std::int64_t{1} << 62);
  Integer x = big * big;
  CHECK_FALSE(x.is_small());
  CHECK(x.to_string() == "21267647932558653966460912964485513216");
  Integer y = x.divexact(big);
  CHECK(y.is_small());
  CHECK(y == big);
  CHECK(Integer::from_string("-123456789012345678901234567890").sign() < 0);
  CHECK_THROWS_AS(Integer::from_string("12a"), std::invalid_argument);
}

TEST_CASE("laurent arithmetic") {
  LaurentPoly a = LaurentPoly::one_minus_q(2);
  LaurentPoly b = P({{0, 1}, {2, 1}});
  CHECK(a * b == LaurentPoly::one_minus_q(4));
  CHECK(a + LaurentPoly() == a);
  CHECK((a - a).is_zero());
  LaurentPoly r = LaurentPoly::one_minus_q(4) * LaurentPoly::one_minus_q(6) * LaurentPoly::one_minus_q(8) *
                  LaurentPoly::monomial(2, -1);
  CHECK(r == P({{2, -1}, {6, 1}, {8, 1}, {10, 1}, {12, -1}, {14, -1}, {16, -1}, {20, 1}}));
  CHECK(r.to_string() == "-q^2 + q^6 + q^8 + q^10 - q^12 - q^14 - q^16 + q^20");
  CHECK(LaurentPoly::monomial(-3, 2).to_string() == "2*q^-3");
  CHECK(LaurentPoly::monomial(-1).dilated(2) == LaurentPoly::monomial(-2));
  CHECK_THROWS_AS((void)LaurentPoly::monomial(-1).at_zero(), std::domain_error);
  CHECK(P({{0, 3}, {1, 5}}).at_zero() == Integer(3));
}

TEST_CASE("big coefficients take the slow path") {
  LaurentPoly p = P({{0, Integer(std::int64_t{1} << 62)}, {1, 1}});
  LaurentPoly sq = p * p;
  CHECK(sq.coef(0).to_string() == "21267647932558653966460912964485513216");
  CHECK(sq.coef(1).to_string() == "9223372036854775808");
  CHECK(*sq.exact_div(p) == p);
}

TEST_CASE("ring laws on random inputs") {
  std::mt19937_64 rng(7);
  for (int it = 0; it < 200; ++it) {
    LaurentPoly a = random_poly(rng, -5, 8, 6, 1000);
    LaurentPoly b = random_poly(rng, -3, 6, 5, 1000);
    LaurentPoly c = random_poly(rng, 0, 10, 7, 1000);
    CHECK(a * b == b * a);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a + b) - b == a);
    if (!b.is_zero()) {
      auto q = (a * b).exact_div(b);
      REQUIRE(q.has_value());
      CHECK(*q == a);
    }
  }
}

TEST_CASE("exact division detects remainders") {
  CHECK_FALSE(LaurentPoly::one_minus_q(3).exact_div(LaurentPoly::one_minus_q(2)).has_value());
  CHECK(*LaurentPoly::one_minus_q(6).exact_div(LaurentPoly::one_minus_q(2)) == P({{0, 1}, {2, 1}, {4, 1}}));
  CHECK(*LaurentPoly::monomial(5, 6).exact_div(LaurentPoly::monomial(2, 3)) == LaurentPoly::monomial(3, 2));
}

TEST_CASE("qrat reduction") {
  QRat r = QRat::reduce(LaurentPoly::one_minus_q(4), LaurentPoly::one_minus_q(2));
  CHECK(r.is_poly());
  CHECK(r.as_poly() == P({{0, 1}, {2, 1}}));
  LaurentPoly p = P({{-2, 3}, {1, -4}, {5, 2}});
  CHECK(QRat::reduce(p, p).as_poly() == LaurentPoly(1));
  LaurentPoly q42 = LaurentPoly::one_minus_q(4) * LaurentPoly::one_minus_q(8);
  CHECK(QRat::reduce(q42 * p, q42).as_poly() == p);
  CHECK_THROWS_AS(QRat::reduce(p, LaurentPoly()), std::domain_error);

  QRat half = QRat::reduce(LaurentPoly::monomial(3), LaurentPoly::monomial(1, -2) * LaurentPoly::one_minus_q(1));
  CHECK(half.den().min_exp() == 0);
  CHECK(half.den().leading_coef().sign() > 0);
  CHECK_FALSE(half.is_poly());
}

TEST_CASE("qrat reduce is idempotent and equality is cross multiplication") {
  std::mt19937_64 rng(11);
  for (int it = 0; it < 100; ++it) {
    LaurentPoly a = random_poly(rng, -3, 6, 4, 50);
    LaurentPoly b = random_poly(rng, -2, 5, 4, 50);
    LaurentPoly c = random_poly(rng, 0, 4, 3, 50);
    if (b.is_zero() || c.is_zero()) continue;
    QRat x = QRat::reduce(a, b);
    QRat y = QRat::reduce(x.num(), x.den());
    CHECK(x.num() == y.num());
    CHECK(x.den() == y.den());
    QRat z = QRat::reduce(a * c, b * c);
    CHECK(x == z);
    CHECK(x.num() == z.num());
    CHECK(x.den() == z.den());
    CHECK((x + z) - z == x);
    if (!x.is_zero()) CHECK((z / x).as_poly() == LaurentPoly(1));
  }
}

TEST_CASE("truncation") {
  CHECK(t3d::trunc_reduce(P({{0, 1}, {8, -1}, {14, 1}}), 6).to_laurent() == LaurentPoly(1));
  CHECK(t3d::trunc_reduce(LaurentPoly::monomial(4), 6).to_laurent() == LaurentPoly::monomial(4));
  CHECK(t3d::trunc_reduce(LaurentPoly::monomial(6), 6).is_zero());
  CHECK_THROWS_AS(t3d::trunc_reduce(LaurentPoly::monomial(-1), 6), t3d::TruncationError);
  CHECK_THROWS_AS(TruncPoly(4) + TruncPoly(5), t3d::TruncationError);

  std::mt19937_64 rng(3);
  for (int it = 0; it < 100; ++it) {
    LaurentPoly a = random_poly(rng, 0, 9, 5, 100);
    LaurentPoly b = random_poly(rng, 0, 9, 5, 100);
    CHECK(t3d::trunc_reduce(a * b, 6) == t3d::trunc_reduce(a, 6) * t3d::trunc_reduce(b, 6));
    CHECK(t3d::trunc_reduce(a + b, 6) == t3d::trunc_reduce(a, 6) + t3d::trunc_reduce(b, 6));
  }
}

TEST_CASE("gcd") {
  LaurentPoly a = LaurentPoly::one_minus_q(6);
  LaurentPoly b = LaurentPoly::one_minus_q(4);
  // gcd(1-q^6, 1-q^4) = 1-q^2 up to sign, normalized to positive leading coefficient
  CHECK(t3d::poly_gcd(a, b) == P({{0, -1}, {2, 1}}));
  CHECK(t3d::poly_gcd(a.scaled(6), b.scaled(4)) == P({{0, -2}, {2, 2}}));
}
