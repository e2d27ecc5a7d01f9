#include "t3d/qpoly.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <map>
#include <sstream>

namespace t3d {

namespace {

using Dense = std::vector<Integer>;  // index = degree

constexpr std::size_t kDenseSpanLimit = 1u << 16;

Integer from_int128(__int128 v) {
  if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max()) {
    return Integer(static_cast<std::int64_t>(v));
  }
  bool neg = v < 0;
  unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
  mpz_class hi(static_cast<unsigned long>(u >> 64));
  mpz_class lo(static_cast<unsigned long>(u & 0xffffffffffffffffULL));
  mpz_class r = (hi << 64) + lo;
  if (neg) r = -r;
  return Integer(r);
}

int bit_width_abs(std::int64_t v) {
  auto u = v < 0 ? static_cast<std::uint64_t>(-(v + 1)) + 1 : static_cast<std::uint64_t>(v);
  return static_cast<int>(std::bit_width(u));
}

void trim(Dense& d) {
  while (!d.empty() && d.back().is_zero()) d.pop_back();
}

Dense to_dense(const LaurentPoly& p) {
  // caller guarantees min_exp() == 0
  Dense d(static_cast<std::size_t>(p.max_exp()) + 1);
  for (const auto& t : p.terms()) d[static_cast<std::size_t>(t.exp)] = t.coef;
  return d;
}

LaurentPoly from_dense(const Dense& d, int offset) {
  std::vector<Term> terms;
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (!d[i].is_zero()) terms.push_back({static_cast<int>(i) + offset, d[i]});
  }
  return LaurentPoly::from_terms(std::move(terms));
}

Integer dense_content(const Dense& d) {
  Integer g;
  for (const auto& c : d) {
    if (!c.is_zero()) g = Integer::gcd(g, c);
    if (g.is_one()) break;
  }
  return g;
}

void make_primitive(Dense& d) {
  Integer g = dense_content(d);
  if (g.is_zero() || g.is_one()) return;
  for (auto& c : d) c = c.divexact(g);
}

// Pseudo-remainder of a by b (both trimmed, b nonzero).
Dense pseudo_rem(Dense a, const Dense& b) {
  const std::size_t db = b.size() - 1;
  const Integer& lb = b.back();
  while (!a.empty() && a.size() - 1 >= db) {
    Integer la = a.back();
    std::size_t shift = a.size() - 1 - db;
    for (auto& c : a) c *= lb;
    for (std::size_t j = 0; j <= db; ++j) a[shift + j].sub_mul(la, b[j]);
    trim(a);
  }
  return a;
}

}  // namespace

// ---------------------------------------------------------------------------
// LaurentPoly

LaurentPoly LaurentPoly::monomial(int exp, Integer coef) {
  if (coef.is_zero()) return {};
  return LaurentPoly(std::vector<Term>{{exp, std::move(coef)}});
}

LaurentPoly LaurentPoly::one_minus_q(int exp) {
  if (exp == 0) return {};
  if (exp > 0) return LaurentPoly(std::vector<Term>{{0, 1}, {exp, -1}});
  return LaurentPoly(std::vector<Term>{{exp, -1}, {0, 1}});
}

LaurentPoly LaurentPoly::from_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), [](const Term& x, const Term& y) { return x.exp < y.exp; });
  std::vector<Term> out;
  out.reserve(terms.size());
  for (auto& t : terms) {
    if (!out.empty() && out.back().exp == t.exp) {
      out.back().coef += t.coef;
    } else {
      if (!out.empty() && out.back().coef.is_zero()) out.pop_back();
      out.push_back(std::move(t));
    }
  }
  if (!out.empty() && out.back().coef.is_zero()) out.pop_back();
  return LaurentPoly(std::move(out));
}

Integer LaurentPoly::coef(int exp) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), exp,
                             [](const Term& t, int e) { return t.exp < e; });
  if (it != terms_.end() && it->exp == exp) return it->coef;
  return Integer();
}

Integer LaurentPoly::at_zero() const {
  if (!terms_.empty() && terms_.front().exp < 0) {
    throw std::domain_error("Laurent polynomial is singular at q = 0: " + to_string());
  }
  return coef(0);
}

Integer LaurentPoly::content() const {
  Integer g;
  for (const auto& t : terms_) {
    g = Integer::gcd(g, t.coef);
    if (g.is_one()) break;
  }
  return g;
}

LaurentPoly LaurentPoly::shifted(int k) const {
  LaurentPoly r = *this;
  for (auto& t : r.terms_) t.exp += k;
  return r;
}

LaurentPoly LaurentPoly::dilated(int factor) const {
  if (factor <= 0) throw std::invalid_argument("dilation factor must be positive");
  LaurentPoly r = *this;
  for (auto& t : r.terms_) t.exp *= factor;
  return r;
}

LaurentPoly LaurentPoly::scaled(const Integer& c) const {
  if (c.is_zero()) return {};
  LaurentPoly r = *this;
  for (auto& t : r.terms_) t.coef *= c;
  return r;
}

LaurentPoly LaurentPoly::divexact(const Integer& c) const {
  LaurentPoly r = *this;
  for (auto& t : r.terms_) t.coef = t.coef.divexact(c);
  return r;
}

void LaurentPoly::add_scaled(const LaurentPoly& o, int sign) {
  if (o.terms_.empty()) return;
  std::vector<Term> out;
  out.reserve(terms_.size() + o.terms_.size());
  auto i = terms_.begin();
  auto j = o.terms_.begin();
  while (i != terms_.end() || j != o.terms_.end()) {
    if (j == o.terms_.end() || (i != terms_.end() && i->exp < j->exp)) {
      out.push_back(std::move(*i++));
    } else if (i == terms_.end() || j->exp < i->exp) {
      out.push_back(*j++);
      if (sign < 0) out.back().coef.negate();
    } else {
      Term t = std::move(*i++);
      if (sign < 0) {
        t.coef -= j->coef;
      } else {
        t.coef += j->coef;
      }
      ++j;
      if (!t.coef.is_zero()) out.push_back(std::move(t));
    }
  }
  terms_ = std::move(out);
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  add_scaled(o, 1);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
  add_scaled(o, -1);
  return *this;
}

LaurentPoly& LaurentPoly::operator*=(const LaurentPoly& o) { return *this = *this * o; }

void LaurentPoly::negate() {
  for (auto& t : terms_) t.coef.negate();
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  if (a.is_monomial() && a.terms_[0].coef.is_one()) return b.shifted(a.terms_[0].exp);
  if (b.is_monomial() && b.terms_[0].coef.is_one()) return a.shifted(b.terms_[0].exp);

  const int lo = a.min_exp() + b.min_exp();
  const auto span = static_cast<std::size_t>(a.max_exp() + b.max_exp() - lo) + 1;

  int wa = 0;
  int wb = 0;
  bool all_small = true;
  for (const auto& t : a.terms_) {
    if (!t.coef.is_small()) { all_small = false; break; }
    wa = std::max(wa, bit_width_abs(t.coef.small_value()));
  }
  for (const auto& t : b.terms_) {
    if (!all_small) break;
    if (!t.coef.is_small()) { all_small = false; break; }
    wb = std::max(wb, bit_width_abs(t.coef.small_value()));
  }
  const int wn = static_cast<int>(std::bit_width(std::min(a.size(), b.size())));

  if (span <= kDenseSpanLimit && all_small && wa + wb + wn <= 126) {
    std::vector<__int128> acc(span, 0);
    for (const auto& x : a.terms_) {
      const __int128 cx = x.coef.small_value();
      for (const auto& y : b.terms_) {
        acc[static_cast<std::size_t>(x.exp + y.exp - lo)] += cx * y.coef.small_value();
      }
    }
    std::vector<Term> out;
    for (std::size_t i = 0; i < span; ++i) {
      if (acc[i] != 0) out.push_back({static_cast<int>(i) + lo, from_int128(acc[i])});
    }
    return LaurentPoly(std::move(out));
  }

  if (span <= kDenseSpanLimit) {
    Dense acc(span);
    for (const auto& x : a.terms_) {
      for (const auto& y : b.terms_) acc[static_cast<std::size_t>(x.exp + y.exp - lo)].add_mul(x.coef, y.coef);
    }
    return from_dense(acc, lo);
  }

  std::map<int, Integer> acc;
  for (const auto& x : a.terms_) {
    for (const auto& y : b.terms_) acc[x.exp + y.exp].add_mul(x.coef, y.coef);
  }
  std::vector<Term> out;
  for (auto& [e, c] : acc) {
    if (!c.is_zero()) out.push_back({e, std::move(c)});
  }
  return LaurentPoly(std::move(out));
}

std::optional<LaurentPoly> LaurentPoly::exact_div(const LaurentPoly& d) const {
  if (d.is_zero()) throw std::domain_error("division by the zero polynomial");
  if (is_zero()) return LaurentPoly();
  if (d.is_monomial()) {
    const auto& dt = d.terms_[0];
    LaurentPoly r = shifted(-dt.exp);
    for (auto& t : r.terms_) {
      if (!t.coef.divisible_by(dt.coef)) return std::nullopt;
      t.coef = t.coef.divexact(dt.coef);
    }
    return r;
  }
  const int offset = min_exp() - d.min_exp();
  Dense n = to_dense(shifted(-min_exp()));
  const Dense dd = to_dense(d.shifted(-d.min_exp()));
  if (dd.size() > n.size()) return std::nullopt;
  const std::size_t deg_d = dd.size() - 1;
  const Integer& lead = dd.back();
  Dense quot(n.size() - deg_d);
  for (std::size_t k = quot.size(); k-- > 0;) {
    Integer& top = n[k + deg_d];
    if (top.is_zero()) continue;
    if (!top.divisible_by(lead)) return std::nullopt;
    Integer qk = top.divexact(lead);
    for (std::size_t j = 0; j <= deg_d; ++j) n[k + j].sub_mul(qk, dd[j]);
    quot[k] = std::move(qk);
  }
  for (std::size_t j = 0; j < deg_d; ++j) {
    if (!n[j].is_zero()) return std::nullopt;
  }
  return from_dense(quot, offset);
}

std::string LaurentPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    Integer c = t.coef;
    bool neg = c.sign() < 0;
    if (neg) c.negate();
    if (first) {
      if (neg) os << '-';
    } else {
      os << (neg ? " - " : " + ");
    }
    first = false;
    if (t.exp == 0) {
      os << c;
      continue;
    }
    if (!c.is_one()) os << c << '*';
    os << 'q';
    if (t.exp != 1) os << '^' << t.exp;
  }
  return os.str();
}

LaurentPoly poly_gcd(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.is_zero() && b.is_zero()) return {};
  if (a.is_zero() || b.is_zero()) {
    const LaurentPoly& p = a.is_zero() ? b : a;
    LaurentPoly r = p.shifted(-p.min_exp());
    r = r.divexact(r.content());
    if (r.leading_coef().sign() < 0) r.negate();
    return r;
  }
  Dense x = to_dense(a.shifted(-a.min_exp()));
  Dense y = to_dense(b.shifted(-b.min_exp()));
  Integer c = Integer::gcd(dense_content(x), dense_content(y));
  make_primitive(x);
  make_primitive(y);
  if (x.size() < y.size()) std::swap(x, y);
  while (!y.empty() && y.size() > 1) {
    Dense r = pseudo_rem(x, y);
    make_primitive(r);
    x = std::move(y);
    y = std::move(r);
  }
  Dense g;
  if (y.empty()) {
    g = std::move(x);
  } else {
    g = {Integer(1)};  // y is a nonzero constant
  }
  make_primitive(g);
  if (g.back().sign() < 0) {
    for (auto& v : g) v.negate();
  }
  for (auto& v : g) v *= c;
  return from_dense(g, 0);
}

// ---------------------------------------------------------------------------
// QRat

QRat QRat::reduce(LaurentPoly num, LaurentPoly den) {
  if (den.is_zero()) throw std::domain_error("QRat with zero denominator");
  if (num.is_zero()) return QRat();
  const int k = num.min_exp() - den.min_exp();
  LaurentPoly n = num.shifted(-num.min_exp());
  LaurentPoly d = den.shifted(-den.min_exp());
  if (d.is_monomial()) {
    Integer g = Integer::gcd(n.content(), d.leading_coef());
    n = n.divexact(g);
    d = d.divexact(g);
  } else {
    LaurentPoly g = poly_gcd(n, d);
    if (!g.is_one()) {
      n = *n.exact_div(g);
      d = *d.exact_div(g);
    }
  }
  if (d.leading_coef().sign() < 0) {
    n.negate();
    d.negate();
  }
  return QRat(n.shifted(k), std::move(d), 0);
}

const LaurentPoly& QRat::as_poly() const {
  if (!is_poly()) throw std::domain_error("fraction is not a Laurent polynomial: " + to_string());
  return num_;
}

QRat operator+(const QRat& a, const QRat& b) {
  if (a.den_ == b.den_) return QRat::reduce(a.num_ + b.num_, a.den_);
  return QRat::reduce(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

QRat operator-(const QRat& a, const QRat& b) {
  if (a.den_ == b.den_) return QRat::reduce(a.num_ - b.num_, a.den_);
  return QRat::reduce(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

QRat operator*(const QRat& a, const QRat& b) { return QRat::reduce(a.num_ * b.num_, a.den_ * b.den_); }

QRat operator/(const QRat& a, const QRat& b) {
  if (b.is_zero()) throw std::domain_error("QRat division by zero");
  return QRat::reduce(a.num_ * b.den_, a.den_ * b.num_);
}

bool operator==(const QRat& a, const QRat& b) { return a.num_ * b.den_ == b.num_ * a.den_; }

std::string QRat::to_string() const {
  if (is_poly()) return num_.to_string();
  return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

// ---------------------------------------------------------------------------
// TruncPoly

TruncPoly::TruncPoly(int order) : order_(order) {
  if (order <= 0) throw std::invalid_argument("truncation order must be positive");
  coefs_.resize(static_cast<std::size_t>(order));
}

TruncPoly::TruncPoly(int order, Integer constant) : TruncPoly(order) { coefs_[0] = std::move(constant); }

bool TruncPoly::is_zero() const {
  return std::all_of(coefs_.begin(), coefs_.end(), [](const Integer& c) { return c.is_zero(); });
}

std::vector<Term> TruncPoly::terms() const {
  std::vector<Term> out;
  for (int e = 0; e < order_; ++e) {
    if (!coefs_[static_cast<std::size_t>(e)].is_zero()) out.push_back({e, coefs_[static_cast<std::size_t>(e)]});
  }
  return out;
}

int TruncPoly::valuation() const {
  for (int e = 0; e < order_; ++e) {
    if (!coefs_[static_cast<std::size_t>(e)].is_zero()) return e;
  }
  return order_;
}

void TruncPoly::check_order(const TruncPoly& o) const {
  if (o.order_ != order_) throw TruncationError("mixed truncation orders");
}

TruncPoly& TruncPoly::operator+=(const TruncPoly& o) {
  check_order(o);
  for (std::size_t i = 0; i < coefs_.size(); ++i) coefs_[i] += o.coefs_[i];
  return *this;
}

TruncPoly& TruncPoly::operator-=(const TruncPoly& o) {
  check_order(o);
  for (std::size_t i = 0; i < coefs_.size(); ++i) coefs_[i] -= o.coefs_[i];
  return *this;
}

TruncPoly operator*(const TruncPoly& a, const TruncPoly& b) {
  a.check_order(b);
  TruncPoly r(a.order_);
  const int va = a.valuation();
  const int vb = b.valuation();
  for (int i = va; i < a.order_; ++i) {
    const Integer& x = a.coefs_[static_cast<std::size_t>(i)];
    if (x.is_zero()) continue;
    for (int j = vb; i + j < a.order_; ++j) {
      const Integer& y = b.coefs_[static_cast<std::size_t>(j)];
      if (!y.is_zero()) r.coefs_[static_cast<std::size_t>(i + j)].add_mul(x, y);
    }
  }
  return r;
}

bool operator==(const TruncPoly& a, const TruncPoly& b) { return a.order_ == b.order_ && a.coefs_ == b.coefs_; }

LaurentPoly TruncPoly::to_laurent() const { return LaurentPoly::from_terms(terms()); }

std::string TruncPoly::to_string() const {
  return to_laurent().to_string() + " + O(q^" + std::to_string(order_) + ")";
}

TruncPoly trunc_reduce(const LaurentPoly& p, int order) {
  TruncPoly r(order);
  if (p.is_zero()) return r;
  if (p.min_exp() < 0) {
    throw TruncationError("negative exponent in truncated arithmetic: " + p.to_string());
  }
  for (const auto& t : p.terms()) {
    if (t.exp >= order) break;
    r.coefs_[static_cast<std::size_t>(t.exp)] = t.coef;
  }
  return r;
}

}  // namespace t3d
