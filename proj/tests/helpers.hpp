#pragma once

#include <initializer_list>
#include <vector>

#include "t3d/qpoly.hpp"

namespace th {

using t3d::LaurentPoly;

inline LaurentPoly P(std::vector<t3d::Term> t) { return LaurentPoly::from_terms(std::move(t)); }
inline LaurentPoly Q(int e, int c = 1) { return LaurentPoly::monomial(e, c); }
inline LaurentPoly omq(int e) { return LaurentPoly::one_minus_q(e); }
inline LaurentPoly prod(std::initializer_list<LaurentPoly> fs) {
  LaurentPoly r(1);
  for (const auto& f : fs) r *= f;
  return r;
}

}  // namespace th
