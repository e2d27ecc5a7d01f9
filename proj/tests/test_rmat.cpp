#include <map>

#include "doctest.h"
#include "helpers.hpp"
#include "t3d/qseries.hpp"
#include "t3d/rmat.hpp"

using namespace th;
using t3d::RIndex;
using t3d::Triple;

TEST_CASE("nonzero R elements with input 314") {
  std::map<Triple, LaurentPoly> expect = {
      {{0, 4, 1}, prod({Q(2, -1), omq(4), omq(6), omq(8)})},
      {{1, 3, 2}, prod({omq(6), omq(8), P({{0, 1}, {4, -1}, {6, -1}, {8, -1}, {10, -1}})})},
      {{2, 2, 3}, prod({Q(2), P({{0, 1}, {2, 1}}), P({{0, 1}, {4, 1}}), omq(6), P({{0, 1}, {6, -1}, {10, -1}})})},
      {{3, 1, 4}, prod({Q(6), P({{0, 1}, {2, 1}, {4, 1}, {8, -1}, {10, -1}, {12, -1}, {14, -1}})})},
      {{4, 0, 5}, Q(12)},
  };
  auto col = t3d::r_column({3, 1, 4});
  CHECK(col.size() == expect.size());
  for (const auto& [out, v] : col) {
    REQUIRE(expect.count(out) == 1);
    CHECK(v == expect[out]);
  }
  CHECK(t3d::r_elem({0, 0, 0, 0, 0, 0}) == LaurentPoly(1));
  CHECK(t3d::r_elem({0, 1, 0, 1, 0, 0}).is_zero());
  CHECK(t3d::s_elem({3, 1, 4, 4, 0, 5}) == Q(24));
  CHECK(t3d::s_elem({0, 0, 0, 0, 0, 0}) == LaurentPoly(1));
  CHECK(t3d::s_elem({1, 0, 0, 0, 0, 1}).is_zero());
}

TEST_CASE("oracle agrees on small indices") {
  for (int i = 0; i <= 4; ++i)
    for (int j = 0; j <= 4; ++j)
      for (int k = 0; k <= 4; ++k)
        for (const auto& o : t3d::r_slice({i, j, k})) {
          RIndex x{i, j, k, o[0], o[1], o[2]};
          CHECK(t3d::r_elem(x) == t3d::r_elem_oracle(x));
        }
  for (int i = 0; i <= 4; ++i)
    for (int j = 0; j <= 4; ++j)
      CHECK(t3d::r_elem_oracle({i, j, 3, i + j, 0, j + 3}) == Q(i * 3));
}

TEST_CASE("combinatorial R") {
  CHECK(t3d::comb_r({3, 1, 4}) == Triple{1, 3, 2});
  CHECK(t3d::comb_r({1, 3, 2}) == Triple{3, 1, 4});
  CHECK(t3d::comb_r({0, 0, 0}) == Triple{0, 0, 0});
}

TEST_CASE("parameter exponents") {
  using t3d::RGauge;
  auto sl = t3d::r_param_exponents({3, 1, 4, 1, 3, 2}, RGauge::SL);
  CHECK(sl.e1 == 4);
  CHECK(sl.e2 == -2);
  CHECK(sl.eps == 0);
  CHECK(t3d::r_param_exponents({0, 0, 0, 0, 0, 0}, RGauge::SL) == t3d::ParamExponentsR{});
  auto sp = t3d::r_param_exponents({3, 1, 4, 1, 3, 2}, RGauge::Sp);
  CHECK(sp.eps == 1);
  CHECK(sp.sig == 0);
  auto inv = t3d::r_param_exponents({3, 1, 4, 1, 3, 2}, RGauge::SpInverse);
  CHECK(inv.e1 == -2);
  CHECK(inv.e2 == 4);
  CHECK(inv.eps == 1);
  CHECK_THROWS_AS(t3d::r_param_exponents({0, 1, 0, 1, 0, 0}, RGauge::SL), std::invalid_argument);
}
