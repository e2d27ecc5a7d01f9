#include "doctest.h"
#include "t3d/birat.hpp"

using namespace t3d;

namespace {
MPoly x(int i) { return MPoly::var(i); }
mpq_class Qr(long n, long d = 1) {
  mpq_class v(n, d);
  v.canonicalize();
  return v;
}
}  // namespace

TEST_CASE("multivariate arithmetic") {
  const MPoly a = x(0), b = x(1);
  const MPoly p = (a + b) * (a - b);
  CHECK(p == a * a - b * b);
  CHECK(p.to_string({{"a", "b"}}) == "a^2 - b^2");
  CHECK(*p.exact_div(a + b) == a - b);
  CHECK_FALSE((a * a + b).exact_div(a).has_value());
  CHECK(MPoly::gcd(p * MPoly(6), (a + b) * (a + b) * MPoly(4)) == (a + b) * MPoly(2));
  CHECK(MPoly::gcd(a * b + b, a * a - MPoly(1)) == a + MPoly(1));
  CHECK(MPoly::gcd(a, b) == MPoly(1));
  CHECK(MPoly::gcd(MPoly(), -a) == a);
  const MPoly c = x(2);
  const MPoly f = (a * c + b) * (b * b - c);
  const MPoly g = (a * c + b) * (a + c * c);
  CHECK(MPoly::gcd(f, g) == a * c + b);
  const std::vector<mpq_class> pt{Qr(1, 2), Qr(3)};
  CHECK(p.eval(pt) == Qr(1, 4) - 9);
}

TEST_CASE("rational functions reduce") {
  const MRat a = MRat::var(0), b = MRat::var(1);
  const MRat r = (a * a - b * b) / (a + b);
  CHECK(r.den() == MPoly(1));
  CHECK(r == a - b);
  CHECK((a / b) * (b / a) == MRat(1));
  CHECK((MRat(1) / a + MRat(1) / b) == (a + b) / (a * b));
  CHECK_THROWS_AS(a / MRat(0), std::domain_error);
  CHECK(MRat(MPoly(-2) * x(0), MPoly(-4)).to_string() == "(x0)/(2)");
}

TEST_CASE("birational R and K at the unit point") {
  auto r = birational_r<mpq_class>({Qr(1), Qr(1), Qr(1)});
  CHECK(r[0] == Qr(1, 2));
  CHECK(r[1] == Qr(2));
  CHECK(r[2] == Qr(1, 2));
  auto back = birational_r<mpq_class>(r);
  CHECK(back == std::array<mpq_class, 3>{Qr(1), Qr(1), Qr(1)});
  auto k = birational_k<mpq_class>({Qr(1), Qr(1), Qr(1), Qr(1)});
  CHECK(k == std::array<mpq_class, 4>{Qr(1, 3), Qr(9, 5), Qr(5, 3), Qr(1, 5)});
  CHECK(birational_k<mpq_class>(k) == std::array<mpq_class, 4>{Qr(1), Qr(1), Qr(1), Qr(1)});
  CHECK_THROWS_AS(birational_r<mpq_class>({Qr(0), Qr(1), Qr(0)}), std::domain_error);
}

TEST_CASE("matrix identities and involutions") {
  for (const auto& rep : check_matrix_identities()) {
    INFO(rep.name);
    CHECK(rep.pass);
    CHECK(rep.checked > 0);
  }
}

TEST_CASE("birational tetrahedron equation") {
  CHECK(verify_birational_equations(BirEquation::Tetrahedron, BirStrategy::Symbolic).pass);
  auto s = verify_birational_equations(BirEquation::Tetrahedron, BirStrategy::Sampled, 32, 7);
  CHECK(s.pass);
  CHECK(s.checked == 32);
}

TEST_CASE("birational reflection equation, sampled") {
  auto s = verify_birational_equations(BirEquation::Reflection, BirStrategy::Sampled, 32, 11);
  CHECK(s.pass);
}

TEST_CASE("tropical limits") {
  std::array<TropExpr, 3> v{TropExpr::var(0), TropExpr::var(1), TropExpr::var(2)};
  auto y = birational_r<TropExpr>(v);
  const std::vector<long> t{3, 1, 4};
  CHECK(y[0].eval(t) == 1);
  CHECK(y[1].eval(t) == 3);
  CHECK(y[2].eval(t) == 2);
  auto yk = birational_k<TropExpr>({TropExpr::var(0), TropExpr::var(1), TropExpr::var(2), TropExpr::var(3)});
  const std::vector<long> u{3, 0, 1, 1};
  CHECK(yk[0].eval(u) == 2);
  CHECK(yk[1].eval(u) == 1);
  CHECK(yk[2].eval(u) == 1);
  CHECK(yk[3].eval(u) == 0);
  const std::vector<long> z{0, 0, 0, 0};
  for (const auto& e : yk) CHECK(e.eval(z) == 0);

  auto r = tropicalize_and_compare(BirMap::R, 4);
  CHECK(r.pass);
  CHECK(r.checked == 125);
  auto k = tropicalize_and_compare(BirMap::K, 4);
  CHECK(k.pass);
  CHECK(k.identification == "(d,c,b,a) = (c,m,d,n), (a~,b~,c~,d~) = (c',m',d',n')");
  CHECK_THROWS_AS(tropicalize_and_compare(BirMap::R, 0), std::invalid_argument);
}
