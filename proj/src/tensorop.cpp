#include "t3d/tensorop.hpp"

#include <omp.h>

#include <algorithm>
#include <cctype>
#include <cstring>
#include <exception>
#include <mutex>
#include <sstream>

#include "t3d/kmat.hpp"
#include "t3d/memo.hpp"
#include "t3d/rmat.hpp"

namespace t3d {

// ---------------------------------------------------------------------------
// SlotSignature

SlotSignature SlotSignature::parse(std::string_view text) {
  SlotSignature sig;
  std::string tok;
  auto flush = [&] {
    if (tok.empty()) return;
    if (tok == "q") {
      sig.bases.push_back(Base::Q);
    } else if (tok == "q2" || tok == "q^2") {
      sig.bases.push_back(Base::Q2);
    } else {
      throw SignatureError("unknown slot base '" + tok + "'");
    }
    tok.clear();
  };
  for (char ch : text) {
    if (ch == ',' || std::isspace(static_cast<unsigned char>(ch))) {
      flush();
    } else {
      tok.push_back(ch);
    }
  }
  flush();
  return sig;
}

SlotSignature SlotSignature::with_q2(std::size_t slots, std::initializer_list<int> q2_slots) {
  SlotSignature sig;
  sig.bases.assign(slots, Base::Q);
  for (int s : q2_slots) sig.bases.at(static_cast<std::size_t>(s)) = Base::Q2;
  return sig;
}

std::string SlotSignature::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < bases.size(); ++i) {
    if (i) out += ',';
    out += bases[i] == Base::Q ? "q" : "q2";
  }
  return out;
}

// ---------------------------------------------------------------------------
// OccState

OccState::OccState(std::span<const int> occ) {
  if (occ.size() > kMaxSlots) throw std::invalid_argument("too many slots: " + std::to_string(occ.size()));
  n_ = static_cast<std::uint8_t>(occ.size());
  for (std::size_t i = 0; i < occ.size(); ++i) set(i, occ[i]);
}

void OccState::set(std::size_t i, int v) {
  if (i >= n_) throw std::out_of_range("slot index out of range");
  if (v < 0 || v > kMaxOcc) throw std::invalid_argument("occupation out of range: " + std::to_string(v));
  occ_[i] = static_cast<std::uint16_t>(v);
}

std::vector<int> OccState::to_vector() const { return {occ_.begin(), occ_.begin() + n_}; }

int OccState::total() const {
  int t = 0;
  for (std::size_t i = 0; i < n_; ++i) t += occ_[i];
  return t;
}

std::size_t OccState::hash() const {
  std::uint64_t words[kMaxSlots / 4];
  std::memcpy(words, occ_.data(), sizeof(words));
  std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ n_;
  const std::size_t used = (n_ + 3) / 4;
  for (std::size_t w = 0; w < used; ++w) {
    h ^= words[w];
    h *= 0xff51afd7ed558ccdULL;
    h ^= h >> 32;
  }
  return static_cast<std::size_t>(h);
}

std::string ket_string(const OccState& s) {
  bool digits = true;
  for (std::size_t i = 0; i < s.size(); ++i) digits = digits && s[i] <= 9;
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!digits && i) out += ',';
    out += std::to_string(s[i]);
  }
  return out;
}

OccState parse_state(std::string_view text) {
  std::vector<int> occ;
  const bool separated = text.find_first_of(", \t") != std::string_view::npos;
  if (!separated) {
    for (char ch : text) {
      if (!std::isdigit(static_cast<unsigned char>(ch))) {
        throw std::invalid_argument("bad state '" + std::string(text) + "'");
      }
      occ.push_back(ch - '0');
    }
  } else {
    std::string tok;
    auto flush = [&] {
      if (tok.empty()) return;
      std::size_t used = 0;
      int v = 0;
      try {
        v = std::stoi(tok, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != tok.size()) throw std::invalid_argument("bad occupation '" + tok + "'");
      occ.push_back(v);
      tok.clear();
    };
    for (char ch : text) {
      if (ch == ',' || std::isspace(static_cast<unsigned char>(ch))) {
        flush();
      } else {
        tok.push_back(ch);
      }
    }
    flush();
  }
  if (occ.empty()) throw std::invalid_argument("empty state");
  return OccState(occ);
}

// ---------------------------------------------------------------------------
// SparseVec

template <class C>
SparseVec<C> SparseVec<C>::from_map(std::unordered_map<OccState, C, OccHash>&& m) {
  SparseVec v;
  v.entries_.reserve(m.size());
  for (auto& [s, c] : m) {
    if (!c.is_zero()) v.entries_.emplace_back(s, std::move(c));
  }
  std::sort(v.entries_.begin(), v.entries_.end(), [](const Entry& x, const Entry& y) { return x.first < y.first; });
  return v;
}

template <class C>
SparseVec<C> SparseVec<C>::from_entries(std::vector<Entry> entries) {
  std::unordered_map<OccState, C, OccHash> m;
  for (auto& [s, c] : entries) {
    auto [it, fresh] = m.try_emplace(s, c);
    if (!fresh) it->second += c;
  }
  return from_map(std::move(m));
}

template <class C>
const C* SparseVec<C>::find(const OccState& s) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), s,
                             [](const Entry& e, const OccState& k) { return e.first < k; });
  if (it != entries_.end() && it->first == s) return &it->second;
  return nullptr;
}

template <class C>
std::size_t SparseVec<C>::term_count() const {
  std::size_t n = 0;
  for (const auto& e : entries_) n += e.second.terms().size();
  return n;
}

template <class C>
SparseVec<C> SparseVec<C>::combine(const SparseVec& a, const SparseVec& b, int sign) {
  SparseVec r;
  auto i = a.entries_.begin();
  auto j = b.entries_.begin();
  while (i != a.entries_.end() || j != b.entries_.end()) {
    if (j == b.entries_.end() || (i != a.entries_.end() && i->first < j->first)) {
      r.entries_.push_back(*i++);
    } else if (i == a.entries_.end() || j->first < i->first) {
      if (sign > 0) {
        r.entries_.push_back(*j);
      } else {
        r.entries_.emplace_back(j->first, (j->second - j->second) - j->second);
      }
      ++j;
    } else {
      C c = sign > 0 ? i->second + j->second : i->second - j->second;
      if (!c.is_zero()) r.entries_.emplace_back(i->first, std::move(c));
      ++i;
      ++j;
    }
  }
  return r;
}

template class SparseVec<LaurentPoly>;
template class SparseVec<TruncPoly>;

// ---------------------------------------------------------------------------
// Factors

std::string to_string(const Factor& f) {
  std::string name;
  switch (f.kind) {
    case OpKind::R: name = "R"; break;
    case OpKind::S: name = "S"; break;
    case OpKind::K: name = "K"; break;
    case OpKind::KRev: name = "Kr"; break;
  }
  name += '(';
  for (std::size_t i = 0; i < f.slots.size(); ++i) {
    if (i) name += ',';
    name += std::to_string(f.slots[i] + 1);
  }
  return name + ')';
}

std::vector<Base> required_bases(OpKind kind) {
  switch (kind) {
    case OpKind::R: return {Base::Q, Base::Q, Base::Q};
    case OpKind::S: return {Base::Q2, Base::Q2, Base::Q2};
    case OpKind::K: return {Base::Q2, Base::Q, Base::Q2, Base::Q};
    case OpKind::KRev: return {Base::Q, Base::Q2, Base::Q, Base::Q2};
  }
  return {};
}

void validate_factor(const Factor& f, const SlotSignature& sig) {
  const auto need = required_bases(f.kind);
  if (f.slots.size() != need.size()) throw SignatureError("wrong arity for " + to_string(f));
  for (std::size_t t = 0; t < f.slots.size(); ++t) {
    const int s = f.slots[t];
    if (s < 0 || static_cast<std::size_t>(s) >= sig.size()) throw SignatureError("slot out of range in " + to_string(f));
    for (std::size_t u = 0; u < t; ++u) {
      if (f.slots[u] == s) throw SignatureError("repeated slot in " + to_string(f));
    }
    if (sig.bases[static_cast<std::size_t>(s)] != need[t]) {
      throw SignatureError("slot base mismatch for " + to_string(f) + " under signature " + sig.to_string());
    }
  }
}

namespace {

// KRev is K on the reversed tuple; everything below works with R, S, K only.
Factor normalized(const Factor& f) {
  if (f.kind != OpKind::KRev) return f;
  Factor g{OpKind::K, f.slots};
  std::reverse(g.slots.begin(), g.slots.end());
  return g;
}

}  // namespace

OccState apply_comb(const OccState& s, const Factor& f0) {
  const Factor f = normalized(f0);
  OccState out = s;
  if (f.kind == OpKind::K) {
    Quad in{s[f.slots[0]], s[f.slots[1]], s[f.slots[2]], s[f.slots[3]]};
    Quad o = comb_k(in);
    for (std::size_t t = 0; t < 4; ++t) out.set(static_cast<std::size_t>(f.slots[t]), o[t]);
  } else {
    Triple in{s[f.slots[0]], s[f.slots[1]], s[f.slots[2]]};
    Triple o = comb_r(in);
    for (std::size_t t = 0; t < 3; ++t) out.set(static_cast<std::size_t>(f.slots[t]), o[t]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// TensorEngine

template <class C>
struct TensorEngine<C>::Column {
  std::vector<std::pair<std::array<int, 4>, C>> entries;
};

template <class C>
struct TensorEngine<C>::Cache {
  ShardedMemo<std::uint64_t, std::shared_ptr<const Column>, U64Hash> memo;
};

template <class C>
TensorEngine<C>::TensorEngine(SlotSignature sig, CoefOps<C> ops)
    : sig_(std::move(sig)), ops_(ops), cache_(std::make_unique<Cache>()) {}

template <class C>
TensorEngine<C>::~TensorEngine() = default;

template <class C>
SparseVec<C> TensorEngine<C>::basis(const OccState& s) const {
  if (s.size() != sig_.size()) throw SignatureError("state length does not match the slot signature");
  return SparseVec<C>::basis(s, ops_.one());
}

template <class C>
auto TensorEngine<C>::column(OpKind kind, const std::array<int, 4>& in) const -> std::shared_ptr<const Column> {
  auto build = [&] {
    auto col = std::make_shared<Column>();
    auto add = [&](const auto& out, const LaurentPoly& v) {
      C c = ops_.from(v);
      if (c.is_zero()) return;
      std::array<int, 4> o{};
      std::copy(out.begin(), out.end(), o.begin());
      col->entries.emplace_back(o, std::move(c));
    };
    if (kind == OpKind::K) {
      for (const auto& [out, v] : k_column({in[0], in[1], in[2], in[3]})) add(out, v);
    } else {
      for (const auto& [out, v] : r_column({in[0], in[1], in[2]}, kind == OpKind::S)) add(out, v);
    }
    return std::shared_ptr<const Column>(std::move(col));
  };
  auto key = pack_key<4>(in, 14);
  if (!key) return build();
  const std::uint64_t k = *key | (static_cast<std::uint64_t>(kind) << 58);
  if (auto hit = cache_->memo.find(k)) return *hit;
  return cache_->memo.insert(k, build());
}

template <class C>
SparseVec<C> TensorEngine<C>::apply(const SparseVec<C>& v, const Factor& f, int jobs) const {
  if (jobs <= 1) return apply_serial(v, f);
  return apply_parallel(v, f, jobs);
}

template <class C>
SparseVec<C> TensorEngine<C>::apply_serial(const SparseVec<C>& v, const Factor& f0) const {
  validate_factor(f0, sig_);
  const Factor f = normalized(f0);
  const std::size_t arity = f.slots.size();
  std::unordered_map<OccState, C, OccHash> acc;
  acc.reserve(v.size() * 4);
  for (const auto& [state, coef] : v.entries()) {
    std::array<int, 4> in{};
    for (std::size_t t = 0; t < arity; ++t) in[t] = state[static_cast<std::size_t>(f.slots[t])];
    auto col = column(f.kind, in);
    for (const auto& [out, val] : col->entries) {
      OccState s = state;
      for (std::size_t t = 0; t < arity; ++t) s.set(static_cast<std::size_t>(f.slots[t]), out[t]);
      C term = coef * val;
      auto [it, fresh] = acc.try_emplace(s, std::move(term));
      if (!fresh) it->second += term;
    }
  }
  return SparseVec<C>::from_map(std::move(acc));
}

template <class C>
SparseVec<C> TensorEngine<C>::apply_parallel(const SparseVec<C>& v, const Factor& f0, int jobs) const {
  validate_factor(f0, sig_);
  const Factor f = normalized(f0);
  const std::size_t arity = f.slots.size();
  const auto entries = v.entries();
  const int nthreads = std::max(1, jobs);
  std::vector<std::unordered_map<OccState, C, OccHash>> partial(static_cast<std::size_t>(nthreads));
  std::exception_ptr error;
  std::mutex error_mu;

  const auto n = static_cast<std::int64_t>(entries.size());
#pragma omp parallel num_threads(nthreads)
  {
    auto& acc = partial[static_cast<std::size_t>(omp_get_thread_num())];
#pragma omp for schedule(dynamic, 8)
    for (std::int64_t idx = 0; idx < n; ++idx) {
      try {
        const auto& [state, coef] = entries[static_cast<std::size_t>(idx)];
        std::array<int, 4> in{};
        for (std::size_t t = 0; t < arity; ++t) in[t] = state[static_cast<std::size_t>(f.slots[t])];
        auto col = column(f.kind, in);
        for (const auto& [out, val] : col->entries) {
          OccState s = state;
          for (std::size_t t = 0; t < arity; ++t) s.set(static_cast<std::size_t>(f.slots[t]), out[t]);
          C term = coef * val;
          auto [it, fresh] = acc.try_emplace(s, std::move(term));
          if (!fresh) it->second += term;
        }
      } catch (...) {
        std::lock_guard lock(error_mu);
        if (!error) error = std::current_exception();
      }
    }
  }
  if (error) std::rethrow_exception(error);

  // Merge: thread t owns the states whose hash falls in bucket t.
  std::vector<std::vector<typename SparseVec<C>::Entry>> owned(static_cast<std::size_t>(nthreads));
#pragma omp parallel num_threads(nthreads)
  {
    const auto t = static_cast<std::size_t>(omp_get_thread_num());
    std::unordered_map<OccState, C, OccHash> mine;
    for (auto& part : partial) {
      for (const auto& [s, c] : part) {
        if (s.hash() % static_cast<std::size_t>(nthreads) != t) continue;
        auto [it, fresh] = mine.try_emplace(s, c);
        if (!fresh) it->second += c;
      }
    }
    auto& out = owned[t];
    out.reserve(mine.size());
    for (auto& [s, c] : mine) {
      if (!c.is_zero()) out.emplace_back(s, std::move(c));
    }
  }
  std::vector<typename SparseVec<C>::Entry> all;
  for (auto& o : owned) std::move(o.begin(), o.end(), std::back_inserter(all));
  std::unordered_map<OccState, C, OccHash> unique;
  unique.reserve(all.size());
  for (auto& [s, c] : all) unique.emplace(s, std::move(c));
  return SparseVec<C>::from_map(std::move(unique));
}

template <class C>
SparseVec<C> TensorEngine<C>::apply_product(const SparseVec<C>& v, std::span<const Factor> factors, int jobs) const {
  SparseVec<C> cur = v;
  for (auto it = factors.rbegin(); it != factors.rend(); ++it) cur = apply(cur, *it, jobs);
  return cur;
}

template class TensorEngine<LaurentPoly>;
template class TensorEngine<TruncPoly>;

QVec apply_r(const QVec& v, const SlotSignature& sig, const std::array<int, 3>& slots, OpKind variant) {
  if (variant != OpKind::R && variant != OpKind::S) throw std::invalid_argument("apply_r takes R or S");
  TensorEngine<LaurentPoly> eng(sig);
  return eng.apply(v, Factor{variant, {slots.begin(), slots.end()}});
}

QVec apply_k(const QVec& v, const SlotSignature& sig, const std::array<int, 4>& slots, bool reversed) {
  TensorEngine<LaurentPoly> eng(sig);
  return eng.apply(v, Factor{reversed ? OpKind::KRev : OpKind::K, {slots.begin(), slots.end()}});
}

// ---------------------------------------------------------------------------
// Oscillators and intertwining relations

std::optional<std::pair<int, LaurentPoly>> osc_apply(Osc op, Base base, int m) {
  if (m < 0) throw std::invalid_argument("negative occupation");
  const int w = base == Base::Q ? 1 : 2;
  switch (op) {
    case Osc::One: return std::pair{m, LaurentPoly(1)};
    case Osc::Plus: return std::pair{m + 1, LaurentPoly(1)};
    case Osc::Minus:
      if (m == 0) return std::nullopt;
      return std::pair{m - 1, LaurentPoly::one_minus_q(2 * w * m)};
    case Osc::K: return std::pair{m, LaurentPoly::monomial(w * m)};
  }
  return std::nullopt;
}

std::string IntertwiningRelation::name() const { return "<" + std::to_string(r) + std::to_string(s) + ">"; }

namespace {

OscTerm term(int sign, int qexp, std::string_view ops) {
  OscTerm t{sign, qexp, {}};
  for (std::size_t i = 0; i < 4; ++i) {
    switch (ops[i]) {
      case '1': t.ops[i] = Osc::One; break;
      case '+': t.ops[i] = Osc::Plus; break;
      case '-': t.ops[i] = Osc::Minus; break;
      default: t.ops[i] = Osc::K; break;
    }
  }
  return t;
}

std::vector<IntertwiningRelation> build_relations() {
  // Each string lists the generator on slots (q^2, q, q^2, q):
  // 1 identity, + creation, - annihilation, k the diagonal generator.
  using V = std::vector<OscTerm>;
  const V x22{term(1, 0, "1-1-"), term(-1, 1, "1k-k")};
  const V x25{term(1, 0, "1kkk")};
  const V x33{term(1, 0, "-+-+"), term(-1, 1, "-k1k"), term(-1, 2, "k-k+")};
  const V x44{term(1, 0, "+-+-"), term(-1, 1, "+k1k"), term(-1, 2, "k+k-")};
  const V x55{term(1, 0, "1+1+"), term(-1, 1, "1k+k")};
  const V a{term(1, 0, "1-1k"), term(1, 0, "1k-+")};
  const V b{term(1, 0, "-+-k"), term(1, 0, "-k1-"), term(-1, 2, "k-kk")};
  const V c{term(1, 0, "1kk-")};
  const V d{term(1, 0, "+-kk"), term(1, 0, "k+-k"), term(1, 0, "kk1-")};
  const V e{term(1, 0, "-+k-"), term(1, 0, "k-+-"), term(-1, 1, "kk1k")};
  const V f{term(1, 0, "+-k+"), term(1, 0, "k+-+"), term(-1, 1, "kk1k")};
  const V g{term(1, 0, "-+kk"), term(1, 0, "k-+k"), term(1, 0, "kk1+")};
  const V h{term(1, 0, "1kk+")};
  const V u{term(1, 0, "+-+k"), term(1, 0, "+k1+"), term(-1, 2, "k+kk")};
  const V w{term(1, 0, "1+1k"), term(1, 0, "1k+-")};
  return {
      {2, 2, x22, x22}, {2, 3, a, b},     {2, 4, c, d}, {2, 5, x25, x25},
      {3, 2, b, a},     {3, 3, x33, x33}, {3, 4, e, f}, {3, 5, g, h},
      {4, 2, d, c},     {4, 3, f, e},     {4, 4, x44, x44}, {4, 5, u, w},
      {5, 2, x25, x25}, {5, 3, h, g},     {5, 4, w, u}, {5, 5, x55, x55},
  };
}

const SlotSignature& k_signature() {
  static const SlotSignature sig = SlotSignature::parse("q2,q,q2,q");
  return sig;
}

}  // namespace

const std::vector<IntertwiningRelation>& intertwining_relations() {
  static const std::vector<IntertwiningRelation> rels = build_relations();
  return rels;
}

QVec apply_osc(const QVec& v, std::span<const OscTerm> terms) {
  const auto& sig = k_signature();
  std::unordered_map<OccState, LaurentPoly, OccHash> acc;
  for (const auto& [state, coef] : v.entries()) {
    if (state.size() != 4) throw SignatureError("oscillator strings act on four slots");
    for (const auto& t : terms) {
      OccState s = state;
      LaurentPoly c = coef.shifted(t.qexp);
      if (t.sign < 0) c.negate();
      bool dead = false;
      for (std::size_t slot = 0; slot < 4 && !dead; ++slot) {
        auto r = osc_apply(t.ops[slot], sig.bases[slot], s[slot]);
        if (!r) {
          dead = true;
          break;
        }
        s.set(slot, r->first);
        if (!r->second.is_one()) c *= r->second;
      }
      if (dead) continue;
      auto [it, fresh] = acc.try_emplace(s, c);
      if (!fresh) it->second += c;
    }
  }
  return QVec::from_map(std::move(acc));
}

void CheckReport::fail(std::string what) {
  pass = false;
  ++failures;
  if (details.size() < 8) details.push_back(std::move(what));
}

CheckReport check_intertwining(int r, int s, int bound, int jobs) {
  const auto& rels = intertwining_relations();
  auto it = std::find_if(rels.begin(), rels.end(), [&](const auto& x) { return x.r == r && x.s == s; });
  if (it == rels.end()) throw std::invalid_argument("no relation <" + std::to_string(r) + std::to_string(s) + ">");
  const IntertwiningRelation& rel = *it;
  CheckReport rep;
  rep.name = "intertwining " + rel.name() + " bound " + std::to_string(bound);
  TensorEngine<LaurentPoly> eng(k_signature());
  const Factor kf{OpKind::K, {0, 1, 2, 3}};
  for (int a = 0; a <= bound; ++a)
    for (int i = 0; i <= bound; ++i)
      for (int b = 0; b <= bound; ++b)
        for (int j = 0; j <= bound; ++j) {
          const QVec in = eng.basis(OccState{a, i, b, j});
          const QVec lhs = apply_osc(eng.apply(in, kf, jobs), rel.lhs);
          const QVec rhs = eng.apply(apply_osc(in, rel.rhs), kf, jobs);
          ++rep.checked;
          if (!(lhs == rhs)) rep.fail(rel.name() + " fails on |" + ket_string(OccState{a, i, b, j}) + ">");
        }
  return rep;
}

CheckReport check_r_recursions(int bound) {
  CheckReport rep;
  rep.name = "R recursions bound " + std::to_string(bound);
  using L = LaurentPoly;
  auto R = [](int i, int j, int k, int a, int b, int c) { return r_elem({i, j, k, a, b, c}); };
  for (int i = 0; i <= bound; ++i)
    for (int j = 0; j <= bound; ++j)
      for (int k = 0; k <= bound; ++k)
        for (int a = 0; a <= bound; ++a)
          for (int b = 0; b <= bound; ++b)
            for (int c = 0; c <= bound; ++c) {
              const L lhs = R(i, j, k, a, b, c);
              const std::string at = to_string(RIndex{i, j, k, a, b, c});
              if (i >= 1) {
                L rhs = (L::one_minus_q(2 * c + 2) * R(i - 1, j, k, a, b - 1, c + 1)).shifted(a - j) +
                        R(i - 1, j, k, a - 1, b, c).shifted(c - j);
                ++rep.checked;
                if (lhs != rhs) rep.fail("i-recursion fails at " + at);
              }
              if (j >= 1) {
                L rhs = R(i, j - 1, k, a - 1, b, c - 1) - R(i, j - 1, k, a, b - 1, c).shifted(a + c + 1);
                ++rep.checked;
                if (lhs != rhs) rep.fail("j-recursion fails at " + at);
              }
              L left = L::one_minus_q(2 * b) * lhs;
              L right = L::one_minus_q(2 * i) * L::one_minus_q(2 * k) * R(i - 1, j, k - 1, a, b - 1, c) -
                        (L::one_minus_q(2 * j) * R(i, j - 1, k, a, b - 1, c)).shifted(i + k + 1);
              ++rep.checked;
              if (left != right) rep.fail("b-lowering identity fails at " + at);
            }
  return rep;
}

}  // namespace t3d
