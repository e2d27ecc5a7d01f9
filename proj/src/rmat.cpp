#include "t3d/rmat.hpp"

#include <algorithm>
#include <stdexcept>

#include "t3d/memo.hpp"
#include "t3d/qseries.hpp"

namespace t3d {

namespace {

bool any_negative(const RIndex& x) { return x.i < 0 || x.j < 0 || x.k < 0 || x.a < 0 || x.b < 0 || x.c < 0; }

ShardedMemo<std::uint64_t, LaurentPoly, U64Hash>& r_memo() {
  static ShardedMemo<std::uint64_t, LaurentPoly, U64Hash> m;
  return m;
}

ShardedMemo<std::uint64_t, LaurentPoly, U64Hash>& p_memo() {
  static ShardedMemo<std::uint64_t, LaurentPoly, U64Hash> m;
  return m;
}

// P_m(i,j,k) with P_0 = 1 and
// P_m = (1-q^{2i})(1-q^{2k}) P_{m-1}(i-1,j,k-1) - q^{2-2m+2i+2k}(1-q^{2j}) P_{m-1}(i,j-1,k).
LaurentPoly p_poly(int m, int i, int j, int k) {
  if (m == 0) return LaurentPoly(1);
  auto key = pack_key<4>({m, i, j, k}, 12);
  if (key) {
    if (auto v = p_memo().find(*key)) return *std::move(v);
  }
  LaurentPoly r;
  if (i > 0 && k > 0) {
    r += LaurentPoly::one_minus_q(2 * i) * LaurentPoly::one_minus_q(2 * k) * p_poly(m - 1, i - 1, j, k - 1);
  }
  if (j > 0) {
    r -= (LaurentPoly::one_minus_q(2 * j) * p_poly(m - 1, i, j - 1, k)).shifted(2 - 2 * m + 2 * i + 2 * k);
  }
  if (key) p_memo().insert(*key, r);
  return r;
}

}  // namespace

LaurentPoly r_elem_uncached(const RIndex& x) {
  if (any_negative(x) || !r_conserves(x)) return {};
  LaurentPoly sum;
  for (int lam = 0; lam <= std::min(x.b, x.j); ++lam) {
    const int mu = x.b - lam;
    if (mu > x.i) continue;
    const int e = x.i * (x.c - x.j) + (x.k + 1) * lam + mu * (mu - x.k);
    LaurentPoly t = qbinomial(x.i, mu, 2) * qbinomial(x.j, lam, 2) * qpoch_range(x.c + 1, x.c + mu, 2);
    t = t.shifted(e);
    if (lam % 2 == 0) {
      sum += t;
    } else {
      sum -= t;
    }
  }
  return sum;
}

LaurentPoly r_elem(const RIndex& x) {
  if (any_negative(x) || !r_conserves(x)) return {};
  auto key = pack_key<6>({x.i, x.j, x.k, x.a, x.b, x.c}, 10);
  if (!key) return r_elem_uncached(x);
  return r_memo().get_or_compute(*key, [&] { return r_elem_uncached(x); });
}

LaurentPoly r_elem_oracle(const RIndex& x) {
  if (any_negative(x) || !r_conserves(x)) return {};
  LaurentPoly p = p_poly(x.b, x.i, x.j, x.k).shifted((x.a - x.j) * (x.c - x.j));
  auto r = p.exact_div(qfact(x.b, 2));
  if (!r) throw std::logic_error("R oracle: P_b not divisible by (q^2)_b at " + to_string(x));
  return *std::move(r);
}

LaurentPoly s_elem(const RIndex& x) { return r_elem(x).dilated(2); }

std::vector<Triple> r_slice(const Triple& in) {
  const auto [i, j, k] = in;
  std::vector<Triple> out;
  if (i < 0 || j < 0 || k < 0) return out;
  for (int b = 0; b <= std::min(i + j, j + k); ++b) out.push_back({i + j - b, b, j + k - b});
  return out;
}

std::vector<std::pair<Triple, LaurentPoly>> r_column(const Triple& in, bool doubled) {
  std::vector<std::pair<Triple, LaurentPoly>> col;
  for (const auto& o : r_slice(in)) {
    RIndex x{in[0], in[1], in[2], o[0], o[1], o[2]};
    LaurentPoly v = doubled ? s_elem(x) : r_elem(x);
    if (!v.is_zero()) col.emplace_back(o, std::move(v));
  }
  return col;
}

Triple comb_r(const Triple& in) {
  const auto [i, j, k] = in;
  return {j + std::max(i - k, 0), std::min(i, k), j + std::max(k - i, 0)};
}

ParamExponentsR r_param_exponents(const RIndex& x, RGauge gauge) {
  if (any_negative(x) || !r_conserves(x)) {
    throw std::invalid_argument("parameter exponents requested off the conservation slice: " + to_string(x));
  }
  ParamExponentsR p;
  p.e1 = x.a - x.j + x.k;
  p.e2 = x.b - x.a - x.k;
  auto mod2 = [](int v) { return ((v % 2) + 2) % 2; };
  switch (gauge) {
    case RGauge::SL:
      break;
    case RGauge::Sp:
      p.eps = mod2(x.j);
      p.sig = mod2(p.e1 + p.e2);
      break;
    case RGauge::SpInverse:
      std::swap(p.e1, p.e2);
      p.eps = mod2(x.b);
      p.sig = mod2(p.e1 + p.e2);
      break;
  }
  return p;
}

std::string to_string(const RIndex& x) {
  return "(" + std::to_string(x.i) + "," + std::to_string(x.j) + "," + std::to_string(x.k) + ";" +
         std::to_string(x.a) + "," + std::to_string(x.b) + "," + std::to_string(x.c) + ")";
}

}  // namespace t3d
