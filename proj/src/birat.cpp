#include "t3d/birat.hpp"

#include <chrono>
#include <functional>
#include <map>
#include <numeric>
#include <random>

#include "json.hpp"
#include "t3d/kmat.hpp"
#include "t3d/rmat.hpp"
#include "t3d/verify.hpp"

namespace t3d {

using Mono = MPoly::Mono;
using MTerm = MPoly::MTerm;

namespace {

bool mono_divides(const Mono& d, const Mono& m) {
  for (int v = 0; v < MPoly::kMaxVars; ++v)
    if (d[v] > m[v]) return false;
  return true;
}

Mono mono_mul(const Mono& a, const Mono& b) {
  Mono r{};
  for (int v = 0; v < MPoly::kMaxVars; ++v) r[v] = static_cast<std::uint16_t>(a[v] + b[v]);
  return r;
}

Mono mono_div(const Mono& a, const Mono& b) {
  Mono r{};
  for (int v = 0; v < MPoly::kMaxVars; ++v) r[v] = static_cast<std::uint16_t>(a[v] - b[v]);
  return r;
}

}  // namespace

struct MPolyAccess {
  static MPoly from_sorted(std::vector<MTerm> t) {
    MPoly p;
    p.terms_ = std::move(t);
    return p;
  }
  static std::vector<MTerm> merge(const std::vector<MTerm>& a, const std::vector<MTerm>& b, int sign) {
    std::vector<MTerm> out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
      if (j == b.size() || (i < a.size() && a[i].exp > b[j].exp)) {
        out.push_back(a[i++]);
      } else if (i == a.size() || b[j].exp > a[i].exp) {
        out.push_back(b[j++]);
        if (sign < 0) out.back().coef.negate();
      } else {
        Integer c = a[i].coef;
        if (sign < 0) c -= b[j].coef; else c += b[j].coef;
        if (!c.is_zero()) out.push_back({a[i].exp, std::move(c)});
        ++i;
        ++j;
      }
    }
    return out;
  }
  static MPoly times_term(const MPoly& p, const MTerm& t) {
    std::vector<MTerm> out;
    out.reserve(p.terms_.size());
    for (const auto& x : p.terms_) out.push_back({mono_mul(x.exp, t.exp), x.coef * t.coef});
    return from_sorted(std::move(out));
  }
  /// Coefficients of p as a polynomial in x_v.
  static std::vector<MPoly> coeffs_in(const MPoly& p, int v) {
    std::vector<std::vector<MTerm>> parts(static_cast<std::size_t>(p.degree(v)) + 1);
    for (const auto& t : p.terms_) {
      MTerm s = t;
      s.exp[v] = 0;
      parts[t.exp[v]].push_back(std::move(s));
    }
    std::vector<MPoly> out;
    out.reserve(parts.size());
    for (auto& part : parts) out.push_back(from_sorted(std::move(part)));
    return out;
  }
  static MPoly lead_coeff_in(const MPoly& p, int v) {
    const int d = p.degree(v);
    std::vector<MTerm> out;
    for (const auto& t : p.terms_) {
      if (t.exp[v] != d) continue;
      MTerm s = t;
      s.exp[v] = 0;
      out.push_back(std::move(s));
    }
    return from_sorted(std::move(out));
  }
  static MPoly content_in(const MPoly& p, int v) {
    MPoly g;
    for (const auto& c : coeffs_in(p, v)) {
      if (c.is_zero()) continue;
      g = MPoly::gcd(g, c);
      if (g.is_constant() && g.leading_coef().is_one()) break;
    }
    return g;
  }
  static MPoly divide(const MPoly& a, const MPoly& b) {
    auto q = a.exact_div(b);
    if (!q) throw std::logic_error("MPoly: expected exact division");
    return *std::move(q);
  }
  /// Pseudo-remainder of a by b in x_v, up to a factor free of x_v.
  static MPoly prem(MPoly a, const MPoly& b, int v) {
    const int db = b.degree(v);
    const MPoly lb = lead_coeff_in(b, v);
    while (!a.is_zero() && a.degree(v) >= db) {
      const int da = a.degree(v);
      const MPoly la = lead_coeff_in(a, v);
      MTerm shift{Mono{}, Integer(1)};
      shift.exp[v] = static_cast<std::uint16_t>(da - db);
      a = lb * a - times_term(la * b, shift);
    }
    return a;
  }
  static MPoly positive(MPoly p) {
    if (!p.is_zero() && p.leading_coef().sign() < 0) p.negate();
    return p;
  }
};

MPoly::MPoly(Integer c) {
  if (!c.is_zero()) terms_.push_back({Mono{}, std::move(c)});
}

MPoly MPoly::var(int idx) {
  if (idx < 0 || idx >= kMaxVars) throw std::out_of_range("MPoly: variable index out of range");
  MTerm t{Mono{}, Integer(1)};
  t.exp[idx] = 1;
  return MPolyAccess::from_sorted({t});
}

bool MPoly::is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].exp == Mono{}); }

int MPoly::degree(int v) const {
  int d = 0;
  for (const auto& t : terms_) d = std::max<int>(d, t.exp[v]);
  return d;
}

int MPoly::main_var() const {
  int m = -1;
  for (const auto& t : terms_)
    for (int v = kMaxVars - 1; v > m; --v)
      if (t.exp[v] != 0) {
        m = v;
        break;
      }
  return m;
}

Integer MPoly::content() const {
  Integer g;
  for (const auto& t : terms_) g = Integer::gcd(g, t.coef);
  return g;
}

MPoly& MPoly::operator+=(const MPoly& o) {
  terms_ = MPolyAccess::merge(terms_, o.terms_, 1);
  return *this;
}

MPoly& MPoly::operator-=(const MPoly& o) {
  terms_ = MPolyAccess::merge(terms_, o.terms_, -1);
  return *this;
}

void MPoly::negate() {
  for (auto& t : terms_) t.coef.negate();
}

MPoly operator*(const MPoly& a, const MPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  if (a.terms_.size() == 1) return MPolyAccess::times_term(b, a.terms_[0]);
  if (b.terms_.size() == 1) return MPolyAccess::times_term(a, b.terms_[0]);
  std::map<Mono, Integer, std::greater<>> acc;
  for (const auto& x : a.terms_)
    for (const auto& y : b.terms_) acc[mono_mul(x.exp, y.exp)].add_mul(x.coef, y.coef);
  std::vector<MTerm> out;
  out.reserve(acc.size());
  for (auto& [e, c] : acc)
    if (!c.is_zero()) out.push_back({e, std::move(c)});
  return MPolyAccess::from_sorted(std::move(out));
}

std::optional<MPoly> MPoly::exact_div(const MPoly& d) const {
  if (d.is_zero()) throw std::domain_error("MPoly: division by zero");
  std::vector<MTerm> q;
  MPoly r = *this;
  const MTerm& ld = d.terms_.front();
  while (!r.is_zero()) {
    const MTerm& lr = r.terms_.front();
    if (!mono_divides(ld.exp, lr.exp) || !lr.coef.divisible_by(ld.coef)) return std::nullopt;
    MTerm t{mono_div(lr.exp, ld.exp), lr.coef.divexact(ld.coef)};
    r -= MPolyAccess::times_term(d, t);
    q.push_back(std::move(t));
  }
  return MPolyAccess::from_sorted(std::move(q));
}

MPoly MPoly::gcd(const MPoly& a, const MPoly& b) {
  if (a.is_zero()) return MPolyAccess::positive(b);
  if (b.is_zero()) return MPolyAccess::positive(a);
  const int v = std::max(a.main_var(), b.main_var());
  if (v < 0) return MPoly(Integer::gcd(a.leading_coef(), b.leading_coef()));
  if (a.degree(v) == 0) return gcd(a, MPolyAccess::content_in(b, v));
  if (b.degree(v) == 0) return gcd(MPolyAccess::content_in(a, v), b);

  const MPoly ca = MPolyAccess::content_in(a, v);
  const MPoly cb = MPolyAccess::content_in(b, v);
  const MPoly c = gcd(ca, cb);
  MPoly p = MPolyAccess::divide(a, ca);
  MPoly r = MPolyAccess::divide(b, cb);
  if (p.degree(v) < r.degree(v)) std::swap(p, r);
  MPoly g;
  while (true) {
    MPoly rem = MPolyAccess::prem(p, r, v);
    if (rem.is_zero()) {
      g = r;
      break;
    }
    if (rem.degree(v) == 0) {
      g = MPoly(1);
      break;
    }
    p = std::move(r);
    r = MPolyAccess::divide(rem, MPolyAccess::content_in(rem, v));
  }
  g = MPolyAccess::divide(g, MPolyAccess::content_in(g, v));
  return MPolyAccess::positive(c * g);
}

mpq_class MPoly::eval(std::span<const mpq_class> x) const {
  mpq_class sum = 0;
  for (const auto& t : terms_) {
    mpq_class term(t.coef.to_mpz());
    for (int v = 0; v < kMaxVars; ++v) {
      if (t.exp[v] == 0) continue;
      if (static_cast<std::size_t>(v) >= x.size()) throw std::out_of_range("MPoly::eval: too few values");
      mpz_class n, d;
      mpz_pow_ui(n.get_mpz_t(), x[v].get_num_mpz_t(), t.exp[v]);
      mpz_pow_ui(d.get_mpz_t(), x[v].get_den_mpz_t(), t.exp[v]);
      term *= mpq_class(n, d);
    }
    sum += term;
  }
  sum.canonicalize();
  return sum;
}

std::string MPoly::to_string(std::span<const std::string> names) const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& t : terms_) {
    std::string mono;
    for (int v = 0; v < kMaxVars; ++v) {
      if (t.exp[v] == 0) continue;
      if (!mono.empty()) mono += '*';
      mono += static_cast<std::size_t>(v) < names.size() ? names[v] : "x" + std::to_string(v);
      if (t.exp[v] > 1) mono += "^" + std::to_string(t.exp[v]);
    }
    const bool neg = t.coef.sign() < 0;
    const Integer mag = t.coef.abs();
    out += out.empty() ? (neg ? "-" : "") : (neg ? " - " : " + ");
    if (mono.empty()) {
      out += mag.to_string();
    } else {
      if (!mag.is_one()) out += mag.to_string() + "*";
      out += mono;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// MRat

MRat::MRat(MPoly num) : num_(std::move(num)), den_(1) {}

MRat::MRat(MPoly num, MPoly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw std::domain_error("MRat: zero denominator");
  if (num_.is_zero()) {
    den_ = MPoly(1);
    return;
  }
  const MPoly g = MPoly::gcd(num_, den_);
  if (!(g.is_constant() && g.leading_coef().is_one())) {
    num_ = MPolyAccess::divide(num_, g);
    den_ = MPolyAccess::divide(den_, g);
  }
  if (den_.leading_coef().sign() < 0) {
    num_.negate();
    den_.negate();
  }
}

MRat operator+(const MRat& a, const MRat& b) {
  if (a.den_ == b.den_) return MRat(a.num_ + b.num_, a.den_);
  return MRat(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

MRat operator-(const MRat& a, const MRat& b) { return a + (-b); }

MRat operator*(const MRat& a, const MRat& b) { return MRat(a.num_ * b.num_, a.den_ * b.den_); }

MRat operator/(const MRat& a, const MRat& b) {
  if (b.is_zero()) throw std::domain_error("MRat: division by zero");
  return MRat(a.num_ * b.den_, a.den_ * b.num_);
}

mpq_class MRat::eval(std::span<const mpq_class> x) const {
  const mpq_class d = den_.eval(x);
  if (sgn(d) == 0) throw std::domain_error("MRat::eval: denominator vanishes");
  mpq_class r = num_.eval(x) / d;
  r.canonicalize();
  return r;
}

std::string MRat::to_string(std::span<const std::string> names) const {
  if (den_.is_constant() && den_.leading_coef().is_one()) return num_.to_string(names);
  return "(" + num_.to_string(names) + ")/(" + den_.to_string(names) + ")";
}

// ---------------------------------------------------------------------------
// TropExpr

struct TropExpr::Node {
  enum class Kind { Affine, Min, Sum } kind = Kind::Affine;
  std::map<int, long> coef;  // Affine: variable -> multiplicity
  long cst = 0;
  std::vector<std::pair<int, std::shared_ptr<const Node>>> kids;  // sign is ignored for Min
};

namespace {

using NodePtr = std::shared_ptr<const TropExpr::Node>;
using Kind = TropExpr::Node::Kind;

bool same_affine(const TropExpr::Node& a, const TropExpr::Node& b) {
  return a.kind == Kind::Affine && b.kind == Kind::Affine && a.coef == b.coef && a.cst == b.cst;
}

long eval_node(const TropExpr::Node& n, std::span<const long> x) {
  switch (n.kind) {
    case Kind::Affine: {
      long s = n.cst;
      for (const auto& [v, c] : n.coef) s += c * x[static_cast<std::size_t>(v)];
      return s;
    }
    case Kind::Min: {
      long m = eval_node(*n.kids.front().second, x);
      for (const auto& k : n.kids) m = std::min(m, eval_node(*k.second, x));
      return m;
    }
    case Kind::Sum: {
      long s = 0;
      for (const auto& [sign, k] : n.kids) s += sign * eval_node(*k, x);
      return s;
    }
  }
  return 0;
}

std::string node_string(const TropExpr::Node& n, std::span<const std::string> names) {
  auto name = [&](int v) { return static_cast<std::size_t>(v) < names.size() ? names[v] : "x" + std::to_string(v); };
  switch (n.kind) {
    case Kind::Affine: {
      std::string out;
      for (const auto& [v, c] : n.coef) {
        if (c == 0) continue;
        if (!out.empty() || c < 0) out += c < 0 ? "-" : "+";
        if (std::abs(c) != 1) out += std::to_string(std::abs(c));
        out += name(v);
      }
      if (n.cst != 0 || out.empty()) {
        if (!out.empty() && n.cst >= 0) out += "+";
        out += std::to_string(n.cst);
      }
      return out;
    }
    case Kind::Min: {
      std::string out = "min(";
      for (std::size_t i = 0; i < n.kids.size(); ++i) out += (i ? ", " : "") + node_string(*n.kids[i].second, names);
      return out + ")";
    }
    case Kind::Sum: {
      std::string out;
      for (const auto& [sign, k] : n.kids) {
        std::string s = node_string(*k, names);
        const bool wrap = k->kind == Kind::Affine && (k->coef.size() + (k->cst != 0)) > 1;
        if (wrap) s = "(" + s + ")";
        out += out.empty() ? (sign < 0 ? "-" : "") : (sign < 0 ? " - " : " + ");
        out += s;
      }
      return out;
    }
  }
  return {};
}

NodePtr combine_sum(const NodePtr& a, const NodePtr& b, int sign_b) {
  auto out = std::make_shared<TropExpr::Node>();
  out->kind = Kind::Sum;
  TropExpr::Node affine;
  bool has_affine = false;
  std::function<void(const NodePtr&, int)> absorb = [&](const NodePtr& n, int sign) {
    if (n->kind == Kind::Affine) {
      has_affine = true;
      for (const auto& [v, c] : n->coef) affine.coef[v] += sign * c;
      affine.cst += sign * n->cst;
    } else if (n->kind == Kind::Sum) {
      for (const auto& [s, k] : n->kids) absorb(k, sign * s);
    } else {
      out->kids.emplace_back(sign, n);
    }
  };
  absorb(a, 1);
  absorb(b, sign_b);
  std::erase_if(affine.coef, [](const auto& kv) { return kv.second == 0; });
  if (out->kids.empty()) return std::make_shared<TropExpr::Node>(std::move(affine));
  if (has_affine && (!affine.coef.empty() || affine.cst != 0)) {
    out->kids.insert(out->kids.begin(), {1, std::make_shared<TropExpr::Node>(std::move(affine))});
  }
  if (out->kids.size() == 1 && out->kids[0].first == 1) return out->kids[0].second;
  return out;
}

}  // namespace

TropExpr::TropExpr() : node_(std::make_shared<Node>()) {}

TropExpr TropExpr::var(int idx) {
  auto n = std::make_shared<Node>();
  n->coef[idx] = 1;
  return TropExpr(std::move(n));
}

TropExpr TropExpr::constant(long c) {
  auto n = std::make_shared<Node>();
  n->cst = c;
  return TropExpr(std::move(n));
}

long TropExpr::eval(std::span<const long> x) const { return eval_node(*node_, x); }

std::string TropExpr::to_string(std::span<const std::string> names) const { return node_string(*node_, names); }

TropExpr operator+(const TropExpr& a, const TropExpr& b) {
  auto out = std::make_shared<TropExpr::Node>();
  out->kind = Kind::Min;
  auto absorb = [&](const NodePtr& n) {
    const auto add = [&](const NodePtr& k) {
      for (const auto& e : out->kids)
        if (same_affine(*e.second, *k)) return;
      out->kids.emplace_back(1, k);
    };
    if (n->kind == Kind::Min) {
      for (const auto& k : n->kids) add(k.second);
    } else {
      add(n);
    }
  };
  absorb(a.node_);
  absorb(b.node_);
  if (out->kids.size() == 1) return TropExpr(out->kids[0].second);
  return TropExpr(std::move(out));
}

TropExpr operator*(const TropExpr& a, const TropExpr& b) { return TropExpr(combine_sum(a.node_, b.node_, 1)); }

TropExpr operator/(const TropExpr& a, const TropExpr& b) { return TropExpr(combine_sum(a.node_, b.node_, -1)); }

// ---------------------------------------------------------------------------
// Checks

void BiratReport::fail(std::string what) {
  pass = false;
  ++failures;
  if (details.size() < 8) details.push_back(std::move(what));
}

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

using Mat = std::vector<std::vector<MRat>>;

Mat identity(std::size_t n) {
  Mat m(n, std::vector<MRat>(n, MRat(0)));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = MRat(1);
  return m;
}

Mat operator*(const Mat& a, const Mat& b) {
  const std::size_t n = a.size();
  Mat c(n, std::vector<MRat>(n, MRat(0)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      if (a[i][k].is_zero()) continue;
      for (std::size_t j = 0; j < n; ++j)
        if (!b[k][j].is_zero()) c[i][j] = c[i][j] + a[i][k] * b[k][j];
    }
  return c;
}

Mat product(std::initializer_list<Mat> ms) {
  Mat out = identity(ms.begin()->size());
  for (const auto& m : ms) out = out * m;
  return out;
}

// Generators of the unipotent subgroups.
Mat G(std::size_t n, int i, const MRat& x) {
  Mat m = identity(n);
  m[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(i)] = x;
  return m;
}

Mat X(int i, const MRat& z) {
  Mat m = identity(4);
  if (i == 1) {
    m[0][1] = z;
    m[2][3] = -z;
  } else {
    m[1][2] = MRat(2) * z;
  }
  return m;
}

Mat Y(int i, const MRat& z) {
  Mat m = identity(5);
  if (i == 1) {
    m[0][1] = z;
    m[3][4] = -z;
  } else {
    m[1][2] = z;
    m[1][3] = MRat(-(z.num() * z.num()), z.den() * z.den() * MPoly(2));
    m[2][3] = -z;
  }
  return m;
}

void compare_mats(BiratReport& rep, const Mat& lhs, const Mat& rhs) {
  for (std::size_t i = 0; i < lhs.size(); ++i)
    for (std::size_t j = 0; j < lhs.size(); ++j) {
      ++rep.checked;
      if (!(lhs[i][j] == rhs[i][j])) rep.fail("entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ") differs");
    }
}

const std::vector<std::string> kABCD{"a", "b", "c", "d"};

}  // namespace

std::vector<BiratReport> check_matrix_identities() {
  std::vector<BiratReport> out;
  const MRat a = MRat::var(0), b = MRat::var(1), c = MRat::var(2), d = MRat::var(3);

  for (const auto& [i, j] : {std::pair{1, 2}, std::pair{2, 1}}) {
    const auto t0 = Clock::now();
    BiratReport rep;
    rep.name = "G" + std::to_string(i) + "G" + std::to_string(j) + "G" + std::to_string(i) + " in 3x3";
    rep.strategy = "symbolic";
    const auto [at, bt, ct] = birational_r<MRat>({c, b, a});
    compare_mats(rep, product({G(3, i, a), G(3, j, b), G(3, i, c)}), product({G(3, j, at), G(3, i, bt), G(3, j, ct)}));
    rep.details.push_back("a~ = " + at.to_string(kABCD));
    rep.details.push_back("b~ = " + bt.to_string(kABCD));
    rep.details.push_back("c~ = " + ct.to_string(kABCD));
    rep.elapsed_ms = ms_since(t0);
    out.push_back(std::move(rep));
  }
  {
    const auto t0 = Clock::now();
    BiratReport rep;
    rep.name = "G1G2G1 at a = 0";
    rep.strategy = "symbolic";
    const auto [at, bt, ct] = birational_r<MRat>({c, b, MRat(0)});
    ++rep.checked;
    if (!(at == b && bt == c && ct.is_zero())) rep.fail("degenerate image is not (b, c, 0)");
    compare_mats(rep, product({G(3, 2, b), G(3, 1, c)}), product({G(3, 2, at), G(3, 1, bt), G(3, 2, ct)}));
    rep.elapsed_ms = ms_since(t0);
    out.push_back(std::move(rep));
  }
  const auto [at, bt, ct, dt] = birational_k<MRat>({d, c, b, a});
  {
    const auto t0 = Clock::now();
    BiratReport rep;
    rep.name = "X2X1X2X1 in 4x4";
    rep.strategy = "symbolic";
    compare_mats(rep, product({X(2, a), X(1, b), X(2, c), X(1, d)}), product({X(1, at), X(2, bt), X(1, ct), X(2, dt)}));
    for (const auto& [n, v] : {std::pair{"a~", &at}, {"b~", &bt}, {"c~", &ct}, {"d~", &dt}}) {
      rep.details.push_back(std::string(n) + " = " + v->to_string(kABCD));
    }
    rep.elapsed_ms = ms_since(t0);
    out.push_back(std::move(rep));
  }
  {
    const auto t0 = Clock::now();
    BiratReport rep;
    rep.name = "Y1Y2Y1Y2 in 5x5";
    rep.strategy = "symbolic";
    compare_mats(rep, product({Y(1, a), Y(2, b), Y(1, c), Y(2, d)}), product({Y(2, at), Y(1, bt), Y(2, ct), Y(1, dt)}));
    rep.elapsed_ms = ms_since(t0);
    out.push_back(std::move(rep));
  }
  {
    const auto t0 = Clock::now();
    BiratReport rep;
    rep.name = "R involution";
    rep.strategy = "symbolic";
    const std::array<MRat, 3> x{c, b, a};
    const auto y = birational_r<MRat>(birational_r<MRat>(x));
    for (int k = 0; k < 3; ++k) {
      ++rep.checked;
      if (!(y[k] == x[k])) rep.fail("component " + std::to_string(k) + " differs");
    }
    rep.elapsed_ms = ms_since(t0);
    out.push_back(std::move(rep));
  }
  {
    const auto t0 = Clock::now();
    BiratReport rep;
    rep.name = "K involution";
    rep.strategy = "symbolic";
    const std::array<MRat, 4> x{d, c, b, a};
    const auto y = birational_k<MRat>(birational_k<MRat>(x));
    for (int k = 0; k < 4; ++k) {
      ++rep.checked;
      if (!(y[k] == x[k])) rep.fail("component " + std::to_string(k) + " differs");
    }
    rep.elapsed_ms = ms_since(t0);
    out.push_back(std::move(rep));
  }
  return out;
}

BiratReport verify_birational_equations(BirEquation eq, BirStrategy strategy, int samples, std::uint64_t seed,
                                        int jobs) {
  const auto t0 = Clock::now();
  const EquationSpec& spec = eq == BirEquation::Tetrahedron ? tetrahedron_spec() : reflection_c_spec();
  const std::size_t n = spec.slots();
  BiratReport rep;
  rep.name = std::string("birational ") + (eq == BirEquation::Tetrahedron ? "tetrahedron" : "reflection") +
             " equation";
  if (strategy == BirStrategy::Symbolic) {
    rep.strategy = "symbolic";
    std::vector<MRat> x;
    for (std::size_t v = 0; v < n; ++v) x.push_back(MRat::var(static_cast<int>(v)));
    const auto lhs = apply_birational<MRat>(x, spec.lhs);
    const auto rhs = apply_birational<MRat>(x, spec.rhs);
    for (std::size_t v = 0; v < n; ++v) {
      ++rep.checked;
      if (!(lhs[v] == rhs[v])) rep.fail("component " + std::to_string(v + 1) + " differs");
    }
  } else {
    rep.strategy = "sampled";
    rep.seed = seed;
    if (samples < 1) throw std::invalid_argument("need at least one sample point");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> dist(1, 1000000);
    auto draw = [&] {
      std::vector<mpq_class> p(n);
      for (auto& v : p) {
        v = mpq_class(dist(rng), dist(rng));
        v.canonicalize();
      }
      return p;
    };
    std::vector<std::vector<mpq_class>> points;
    for (int s = 0; s < samples; ++s) points.push_back(draw());
    // 1 equal, 0 differ, -1 a denominator vanished
    std::vector<int> verdict(points.size(), 0);
    auto check = [&](const std::vector<mpq_class>& p) {
      try {
        return apply_birational<mpq_class>(p, spec.lhs) == apply_birational<mpq_class>(p, spec.rhs) ? 1 : 0;
      } catch (const std::domain_error&) {
        return -1;
      }
    };
    const long count = static_cast<long>(points.size());
#pragma omp parallel for num_threads(std::max(1, jobs)) schedule(dynamic)
    for (long s = 0; s < count; ++s) verdict[static_cast<std::size_t>(s)] = check(points[static_cast<std::size_t>(s)]);
    for (std::size_t s = 0; s < points.size(); ++s) {
      for (int tries = 0; verdict[s] < 0 && tries < 16; ++tries) {
        points[s] = draw();
        verdict[s] = check(points[s]);
      }
      ++rep.checked;
      if (verdict[s] < 0) rep.fail("sample " + std::to_string(s) + ": denominators kept vanishing");
      if (verdict[s] == 0) rep.fail("sample " + std::to_string(s) + ": sides differ");
    }
  }
  rep.elapsed_ms = ms_since(t0);
  return rep;
}

BiratReport tropicalize_and_compare(BirMap map, int bound) {
  if (bound < 1) throw std::invalid_argument("grid bound must be at least 1");
  const auto t0 = Clock::now();
  const bool is_r = map == BirMap::R;
  const std::size_t n = is_r ? 3 : 4;
  const std::vector<std::string> trop_in = is_r ? std::vector<std::string>{"c", "b", "a"}
                                                : std::vector<std::string>{"d", "c", "b", "a"};
  const std::vector<std::string> trop_out = is_r ? std::vector<std::string>{"a~", "b~", "c~"}
                                                 : std::vector<std::string>{"a~", "b~", "c~", "d~"};
  const std::vector<std::string> comb_in = is_r ? std::vector<std::string>{"i", "j", "k"}
                                                : std::vector<std::string>{"c", "m", "d", "n"};
  const std::vector<std::string> comb_out = is_r ? std::vector<std::string>{"a", "b", "c"}
                                                 : std::vector<std::string>{"c'", "m'", "d'", "n'"};

  std::vector<TropExpr> image;
  if (is_r) {
    const auto y = birational_r<TropExpr>({TropExpr::var(0), TropExpr::var(1), TropExpr::var(2)});
    image.assign(y.begin(), y.end());
  } else {
    const auto y = birational_k<TropExpr>({TropExpr::var(0), TropExpr::var(1), TropExpr::var(2), TropExpr::var(3)});
    image.assign(y.begin(), y.end());
  }

  BiratReport rep;
  rep.name = std::string("tropical ") + (is_r ? "R" : "K") + " vs combinatorial on [0," + std::to_string(bound) + "]";
  rep.strategy = "grid";
  for (std::size_t k = 0; k < n; ++k) rep.details.push_back(trop_out[k] + " = " + image[k].to_string(trop_in));

  auto comb = [&](const std::vector<long>& u) {
    std::vector<long> w(n);
    if (is_r) {
      const Triple r = comb_r({static_cast<int>(u[0]), static_cast<int>(u[1]), static_cast<int>(u[2])});
      std::copy(r.begin(), r.end(), w.begin());
    } else {
      const Quad r = comb_k({static_cast<int>(u[0]), static_cast<int>(u[1]), static_cast<int>(u[2]), static_cast<int>(u[3])});
      std::copy(r.begin(), r.end(), w.begin());
    }
    return w;
  };
  auto for_grid = [&](int b, const std::function<void(const std::vector<long>&)>& fn) {
    std::vector<long> t(n, 0);
    while (true) {
      fn(t);
      std::size_t d = 0;
      while (d < n && t[d] == b) t[d++] = 0;
      if (d == n) return;
      ++t[d];
    }
  };
  auto matches = [&](const std::vector<int>& sigma, const std::vector<int>& tau, const std::vector<long>& t) {
    std::vector<long> u(n);
    for (std::size_t k = 0; k < n; ++k) u[static_cast<std::size_t>(sigma[k])] = t[k];
    const auto w = comb(u);
    for (std::size_t k = 0; k < n; ++k)
      if (image[k].eval(t) != w[static_cast<std::size_t>(tau[k])]) return false;
    return true;
  };
  auto describe = [&](const std::vector<int>& sigma, const std::vector<int>& tau) {
    std::string in = "(", out = "(", cin = "(", cout = "(";
    for (std::size_t k = 0; k < n; ++k) {
      const char* sep = k + 1 < n ? "," : ")";
      in += trop_in[k] + sep;
      cin += comb_in[static_cast<std::size_t>(sigma[k])] + sep;
      out += trop_out[k] + sep;
      cout += comb_out[static_cast<std::size_t>(tau[k])] + sep;
    }
    return in + " = " + cin + ", " + out + " = " + cout;
  };

  // Discovery over all input and output permutations on a small grid.
  std::vector<int> sigma(n), tau(n);
  std::iota(sigma.begin(), sigma.end(), 0);
  const std::vector<int> ident = sigma;
  bool frozen_found = false;
  do {
    std::iota(tau.begin(), tau.end(), 0);
    do {
      bool ok = true;
      for_grid(std::min(bound, 2), [&](const std::vector<long>& t) { ok = ok && matches(sigma, tau, t); });
      if (ok) {
        rep.identifications.push_back(describe(sigma, tau));
        if (sigma == ident && tau == ident) frozen_found = true;
      }
    } while (std::next_permutation(tau.begin(), tau.end()));
  } while (std::next_permutation(sigma.begin(), sigma.end()));

  rep.identification = describe(ident, ident);
  if (!frozen_found) rep.fail("positional identification not consistent on the discovery grid");
  for_grid(bound, [&](const std::vector<long>& t) {
    ++rep.checked;
    if (!matches(ident, ident, t)) {
      std::string at;
      for (long v : t) at += std::to_string(v) + " ";
      rep.fail("mismatch at " + at);
    }
  });
  rep.elapsed_ms = ms_since(t0);
  return rep;
}

std::string reports_to_json(std::span<const BiratReport> reports) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : reports) {
    nlohmann::json j{{"name", r.name},         {"strategy", r.strategy}, {"pass", r.pass},
                     {"checked", r.checked},   {"failures", r.failures}, {"details", r.details},
                     {"elapsed_ms", r.elapsed_ms}};
    if (r.seed) j["seed"] = *r.seed;
    if (!r.identification.empty()) {
      j["identification"] = r.identification;
      j["consistent_identifications"] = r.identifications;
    }
    arr.push_back(std::move(j));
  }
  return arr.dump(2);
}

}  // namespace t3d
