#include "t3d/kmat.hpp"

#include <algorithm>

#include "t3d/memo.hpp"
#include "t3d/qseries.hpp"

namespace t3d {

namespace {

using Memo = ShardedMemo<std::uint64_t, LaurentPoly, U64Hash>;

Memo& kernel_memo() {
  static Memo m;
  return m;
}

Memo& k_memo() {
  static Memo m;
  return m;
}

Memo& oracle_memo() {
  static Memo m;
  return m;
}

bool any_negative(const KIndex& x) {
  return x.a < 0 || x.i < 0 || x.b < 0 || x.j < 0 || x.c < 0 || x.m < 0 || x.d < 0 || x.n < 0;
}

std::optional<std::uint64_t> key_of(const KIndex& x) {
  return pack_key<8>({x.a, x.i, x.b, x.j, x.c, x.m, x.d, x.n}, 8);
}

LaurentPoly signed_shift(LaurentPoly p, int sign_exp, int shift) {
  if (sign_exp % 2 != 0) p.negate();
  return p.shifted(shift);
}

LaurentPoly kernel_uncached(int a, int i, int j, int c, int m) {
  LaurentPoly sum;
  for (int lam = std::max(0, m - i); lam <= std::min(j, m); ++lam) {
    const int phi2 = (a + c + 1) * (m + j - 2 * lam) + m - j;
    LaurentPoly t = qpoch_range(c + 1, c + lam, 4) * qbinomial(j, lam, 2) * qbinomial(i, m - lam, 2);
    sum += signed_shift(std::move(t), m + lam, phi2);
  }
  return sum;
}

LaurentPoly oracle(const KIndex& x);

LaurentPoly oracle_step(const KIndex& x) {
  const auto [a, i, b, j, c, m, d, n] = x;
  if (b >= 1) {
    LaurentPoly r = -oracle({a, i, b - 1, j, c, m - 1, d, n - 1});
    r += oracle({a, i + 1, b - 1, j + 1, c, m, d, n});
    r += oracle({a, i, b - 1, j, c, m, d - 1, n}).shifted(m + n + 1);
    return r.shifted(-i - j - 1);
  }
  if (d >= 1) {
    LaurentPoly r = -(LaurentPoly::one_minus_q(2 * i) * LaurentPoly::one_minus_q(2 * j) *
                      oracle({a, i - 1, 0, j - 1, c, m, d - 1, n}));
    r += LaurentPoly::one_minus_q(2 * m + 2) * LaurentPoly::one_minus_q(2 * n + 2) *
         oracle({a, i, 0, j, c, m + 1, d - 1, n + 1});
    auto q = r.shifted(-m - n - 1).exact_div(LaurentPoly::one_minus_q(4 * d));
    if (!q) throw PolynomialityError("K oracle: d-reduction left a remainder at " + to_string(x));
    return *std::move(q);
  }
  if (n >= 1) {
    LaurentPoly r = (LaurentPoly::one_minus_q(2 * j) * oracle({a, i, 0, j - 1, c, m, 0, n - 1})).shifted(2 * a + i - m);
    r += (LaurentPoly::one_minus_q(2 * i) * oracle({a + 1, i - 1, 0, j, c, m, 0, n - 1})).shifted(j - m);
    auto q = r.exact_div(LaurentPoly::one_minus_q(2 * n));
    if (!q) throw PolynomialityError("K oracle: n-reduction left a remainder at " + to_string(x));
    return *std::move(q);
  }
  if (j >= 1) {
    return (LaurentPoly::one_minus_q(4 * c + 4) * oracle({a, i, 0, j - 1, c + 1, m - 1, 0, n})).shifted(n - i);
  }
  // b = d = n = j = 0: conservation forces c = a and m = i.
  return signed_shift(LaurentPoly(1), i, 2 * (a + 1) * i);
}

LaurentPoly oracle(const KIndex& x) {
  if (any_negative(x) || !k_conserves(x)) return {};
  auto key = key_of(x);
  if (!key) return oracle_step(x);
  if (auto v = oracle_memo().find(*key)) return *std::move(v);
  LaurentPoly r = oracle_step(x);
  oracle_memo().insert(*key, r);
  return r;
}

}  // namespace

LaurentPoly k_kernel(int a, int i, int j, int c, int m, int n) {
  if (a < 0 || i < 0 || j < 0 || c < 0 || m < 0 || n < 0) return {};
  if (c + m != a + i || n - c != j - a) return {};
  auto key = pack_key<6>({a, i, j, c, m, n}, 10);
  if (!key) return kernel_uncached(a, i, j, c, m);
  return kernel_memo().get_or_compute(*key, [&] { return kernel_uncached(a, i, j, c, m); });
}

LaurentPoly k_elem_uncached(const KIndex& x) {
  if (any_negative(x) || !k_conserves(x)) return {};
  const auto [a, i, b, j, c, m, d, n] = x;
  // Every term is brought over the common denominator
  // (q^4)_c (q^4)_d (q^2)_m (q^2)_n, summed, and divided exactly.
  LaurentPoly sum;
  for (int al = 0; al <= std::min({b, m, n}); ++al) {
    for (int be = 0; be <= std::min(b - al, d); ++be) {
      for (int ga = 0; ga <= d - be; ++ga) {
        const int s = al + be + ga;
        if (i + b - s < 0 || j + b - s < 0 || m + d - s < 0 || n + d - s < 0) continue;
        LaurentPoly kz = k_kernel(c, m + d - s, n + d - s, a, i + b - s, j + b - s);
        if (kz.is_zero()) continue;
        const int phi1 = al * (al + 2 * d - 2 * be - 1) + (2 * be - d) * (m + n + d) + ga * (ga - 1) -
                         b * (i + j + b);
        LaurentPoly t = qbinomial(b, al, 2) * qbinomial(b - al, be, 2) * qbinomial(d - be, ga, 2);
        t *= qfact(i + b - al - be, 2) * qfact(j + b - al - be, 2);
        t *= qpoch_range(m - al + 1, m, 2) * qpoch_range(n - al + 1, n, 2);
        t *= qpoch_range(d - be + 1, d, 4);
        t *= kz;
        sum += signed_shift(std::move(t), al + ga, phi1);
      }
    }
  }
  if (sum.is_zero()) return sum;
  sum *= qfact(a, 4);
  const LaurentPoly den = qfact(c, 4) * qfact(d, 4) * qfact(m, 2) * qfact(n, 2);
  auto q = sum.exact_div(den);
  if (!q) throw PolynomialityError("K closed form did not clear its denominator at " + to_string(x));
  return *std::move(q);
}

LaurentPoly k_elem(const KIndex& x) {
  if (any_negative(x) || !k_conserves(x)) return {};
  auto key = key_of(x);
  if (!key) return k_elem_uncached(x);
  return k_memo().get_or_compute(*key, [&] { return k_elem_uncached(x); });
}

LaurentPoly k_elem_oracle(const KIndex& x) { return oracle(x); }

LaurentPoly kb_elem(const Quad& in, const Quad& out) {
  return k_elem({in[3], in[2], in[1], in[0], out[3], out[2], out[1], out[0]});
}

std::vector<Quad> k_slice(const Quad& in) {
  const auto [a, i, b, j] = in;
  std::vector<Quad> out;
  if (a < 0 || i < 0 || b < 0 || j < 0) return out;
  const int s1 = a + i + b;
  const int s2 = b + j - a;
  for (int c = 0; c <= s1; ++c) {
    for (int d = 0; c + d <= s1; ++d) {
      const int m = s1 - c - d;
      const int n = s2 + c - d;
      if (n >= 0) out.push_back({c, m, d, n});
    }
  }
  return out;
}

std::vector<std::pair<Quad, LaurentPoly>> k_column(const Quad& in) {
  std::vector<std::pair<Quad, LaurentPoly>> col;
  for (const auto& o : k_slice(in)) {
    LaurentPoly v = k_elem({in[0], in[1], in[2], in[3], o[0], o[1], o[2], o[3]});
    if (!v.is_zero()) col.emplace_back(o, std::move(v));
  }
  return col;
}

Quad comb_k(const Quad& in) {
  const auto [c, m, d, n] = in;
  const int x = std::max(d - c + std::max(n - m, 0), 0);
  return {x + c + m - n, d - x + n - std::min(c, d + x), std::min(c, d + x), m + std::max(d + x - c, 0)};
}

ParamExponentsK k_param_exponents(const KIndex& x) {
  if (any_negative(x) || !k_conserves(x)) {
    throw std::invalid_argument("parameter exponents requested off the conservation slice: " + to_string(x));
  }
  auto mod2 = [](int v) { return ((v % 2) + 2) % 2; };
  return {mod2(x.m + x.j), 2 * x.d - 2 * x.b, x.m - x.i, mod2(x.m - x.i)};
}

std::string to_string(const KIndex& x) {
  return "(" + std::to_string(x.a) + "," + std::to_string(x.i) + "," + std::to_string(x.b) + "," +
         std::to_string(x.j) + ";" + std::to_string(x.c) + "," + std::to_string(x.m) + "," + std::to_string(x.d) +
         "," + std::to_string(x.n) + ")";
}

}  // namespace t3d
