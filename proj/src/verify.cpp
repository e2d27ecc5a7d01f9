#include "t3d/verify.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <map>

#include "t3d/kmat.hpp"
#include "t3d/qseries.hpp"
#include "t3d/rmat.hpp"

namespace t3d {

// ---------------------------------------------------------------------------
// Equation data

std::vector<Factor> parse_factors(std::string_view text) {
  std::vector<Factor> out;
  std::size_t pos = 0;
  auto skip_space = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  skip_space();
  while (pos < text.size()) {
    const char letter = text[pos++];
    OpKind kind{};
    switch (letter) {
      case 'R': kind = OpKind::R; break;
      case 'S': kind = OpKind::S; break;
      case 'K': kind = OpKind::K; break;
      default: throw std::invalid_argument(std::string("unknown operator '") + letter + "'");
    }
    std::vector<int> slots;
    if (pos < text.size() && text[pos] == '(') {
      const std::size_t close = text.find(')', pos);
      if (close == std::string_view::npos) throw std::invalid_argument("unbalanced parenthesis in factor list");
      std::string inner(text.substr(pos + 1, close - pos - 1));
      std::size_t p = 0;
      while (p < inner.size()) {
        while (p < inner.size() && (inner[p] == ',' || std::isspace(static_cast<unsigned char>(inner[p])))) ++p;
        if (p >= inner.size()) break;
        std::size_t used = 0;
        slots.push_back(std::stoi(inner.substr(p), &used));
        p += used;
      }
      pos = close + 1;
    } else {
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) slots.push_back(text[pos++] - '0');
    }
    for (int& s : slots) {
      if (s < 1) throw std::invalid_argument("slots are numbered from 1");
      --s;
    }
    const std::size_t arity = kind == OpKind::K ? 4 : 3;
    if (slots.size() != arity) throw std::invalid_argument("wrong number of slots in factor list");
    if (kind == OpKind::K && std::is_sorted(slots.begin(), slots.end(), std::greater<>())) {
      kind = OpKind::KRev;
      std::reverse(slots.begin(), slots.end());
    } else if (!std::is_sorted(slots.begin(), slots.end())) {
      throw std::invalid_argument("factor slots must be monotone");
    }
    out.push_back({kind, std::move(slots)});
    skip_space();
  }
  return out;
}

SlotSignature infer_signature(std::size_t slots, const std::vector<Factor>& lhs, const std::vector<Factor>& rhs) {
  std::vector<std::optional<Base>> forced(slots);
  auto absorb = [&](const std::vector<Factor>& fs) {
    for (const auto& f : fs) {
      const auto need = required_bases(f.kind);
      for (std::size_t t = 0; t < f.slots.size(); ++t) {
        const auto s = static_cast<std::size_t>(f.slots[t]);
        if (s >= slots) throw SignatureError("slot out of range in " + to_string(f));
        if (forced[s] && *forced[s] != need[t]) {
          throw SignatureError("inconsistent base for slot " + std::to_string(s + 1) + " at " + to_string(f));
        }
        forced[s] = need[t];
      }
    }
  };
  absorb(lhs);
  absorb(rhs);
  SlotSignature sig;
  for (std::size_t s = 0; s < slots; ++s) {
    if (!forced[s]) throw SignatureError("slot " + std::to_string(s + 1) + " is not constrained by any factor");
    sig.bases.push_back(*forced[s]);
  }
  return sig;
}

namespace {

EquationSpec make_spec(std::string name, std::size_t slots, std::string_view lhs, std::string_view rhs,
                       std::optional<SlotSignature> expected) {
  EquationSpec eq;
  eq.name = std::move(name);
  eq.lhs = parse_factors(lhs);
  eq.rhs = parse_factors(rhs);
  eq.signature = infer_signature(slots, eq.lhs, eq.rhs);
  if (expected && !(*expected == eq.signature)) {
    throw SignatureError(eq.name + ": inferred signature " + eq.signature.to_string() + " differs from " +
                         expected->to_string());
  }
  return eq;
}

std::string reversed_factor_text(std::string_view text) {
  std::vector<std::string> toks;
  std::string cur;
  int depth = 0;
  for (char ch : text) {
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (depth == 0 && std::isspace(static_cast<unsigned char>(ch))) {
      if (!cur.empty()) toks.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  if (!cur.empty()) toks.push_back(std::move(cur));
  std::string out;
  for (auto it = toks.rbegin(); it != toks.rend(); ++it) {
    if (!out.empty()) out += ' ';
    out += *it;
  }
  return out;
}

constexpr std::string_view kF4Lhs =
    "S(14,15,16) S(9,11,16) K(16,10,8,7) K(9,13,15,17) S(4,5,16) R(7,12,17) S(1,2,16) R(6,10,17) "
    "S(9,14,18) K(1,3,5,17) S(11,15,18) K(18,12,8,6) S(1,4,18) S(1,8,15) R(7,13,19) K(1,6,11,19) "
    "K(4,12,15,19) R(3,10,19) S(4,8,11) K(1,7,14,20) S(2,5,18) R(6,13,20) R(3,12,20) S(1,9,21) "
    "K(2,10,15,20) S(4,14,21) K(21,13,8,3) S(2,11,21) S(2,8,14) R(6,7,22) K(2,3,4,22) S(5,15,21) "
    "K(11,13,14,22) R(10,12,22) K(2,6,9,23) R(3,7,23) R(19,20,22) K(16,17,18,22) R(10,13,23) "
    "K(5,12,14,23) R(3,6,24) K(16,19,21,23) K(4,7,9,24) R(17,20,23) K(5,10,11,24) R(12,13,24) "
    "R(17,19,24) K(18,20,21,24) S(5,8,9) R(22,23,24)";

}  // namespace

const EquationSpec& tetrahedron_spec() {
  static const EquationSpec eq =
      make_spec("tetrahedron", 6, "R356 R246 R145 R123", "R123 R145 R246 R356", SlotSignature::with_q2(6, {}));
  return eq;
}

const EquationSpec& reflection_c_spec() {
  static const EquationSpec eq =
      make_spec("reflection-C", 9, "R456 R489 K3579 R269 R258 K1678 K1234", "K1234 K1678 R258 R269 K3579 R489 R456",
                SlotSignature::with_q2(9, {0, 2, 6}));
  return eq;
}

const EquationSpec& reflection_b_spec() {
  static const EquationSpec eq = [] {
    SlotSignature sig = SlotSignature::with_q2(9, {});
    for (auto& b : sig.bases) b = Base::Q2;
    sig.bases[0] = sig.bases[2] = sig.bases[6] = Base::Q;
    return make_spec("reflection-B", 9, "S456 S489 K9753 S269 S258 K8761 K4321",
                     "K4321 K8761 S258 S269 K9753 S489 S456", sig);
  }();
  return eq;
}

const EquationSpec& f4_spec() {
  static const EquationSpec eq = make_spec("F4", 24, kF4Lhs, reversed_factor_text(kF4Lhs), std::nullopt);
  return eq;
}

OccState f4_reference_state() { return parse_state("111101101010101102110101"); }

std::string to_string(Mode m) {
  switch (m) {
    case Mode::Quantum: return "quantum";
    case Mode::Comb: return "comb";
    case Mode::Truncated: return "truncated";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Equation evaluation

namespace {

template <class C>
void compare_sides(VerifyReport& rep, const SparseVec<C>& lhs, const SparseVec<C>& rhs) {
  rep.lhs_count = lhs.size();
  rep.rhs_count = rhs.size();
  rep.lhs_terms = lhs.term_count();
  rep.rhs_terms = rhs.term_count();
  rep.pass = lhs == rhs;
  if (rep.pass) return;
  const SparseVec<C> diff = lhs - rhs;
  rep.details.push_back(std::to_string(diff.size()) + " kets differ");
  for (std::size_t n = 0; n < std::min<std::size_t>(diff.size(), 5); ++n) {
    rep.details.push_back("differs at |" + ket_string(diff.entries()[n].first) + ">");
  }
}

std::vector<std::string> comb_chain(const OccState& start, const std::vector<Factor>& factors) {
  std::vector<std::string> chain{ket_string(start)};
  OccState cur = start;
  for (auto it = factors.rbegin(); it != factors.rend(); ++it) {
    cur = apply_comb(cur, *it);
    chain.push_back(ket_string(cur));
  }
  return chain;
}

}  // namespace

VerifyReport verify_equation(const EquationSpec& eq, const OccState& state, Mode mode, int jobs, int trunc_order) {
  if (state.size() != eq.slots()) {
    throw std::invalid_argument(eq.name + " needs a state with " + std::to_string(eq.slots()) + " slots");
  }
  const auto t0 = std::chrono::steady_clock::now();
  VerifyReport rep;
  rep.equation = eq.name;
  rep.input = ket_string(state);
  rep.mode = mode;
  switch (mode) {
    case Mode::Comb: {
      for (const auto& f : eq.lhs) validate_factor(f, eq.signature);
      for (const auto& f : eq.rhs) validate_factor(f, eq.signature);
      rep.lhs_chain = comb_chain(state, eq.lhs);
      rep.rhs_chain = comb_chain(state, eq.rhs);
      rep.lhs_count = rep.rhs_count = 1;
      rep.lhs_terms = rep.rhs_terms = 1;
      rep.pass = rep.lhs_chain.back() == rep.rhs_chain.back();
      if (!rep.pass) rep.details.push_back("final states differ");
      break;
    }
    case Mode::Quantum: {
      TensorEngine<LaurentPoly> eng(eq.signature);
      const QVec in = eng.basis(state);
      compare_sides(rep, eng.apply_product(in, eq.lhs, jobs), eng.apply_product(in, eq.rhs, jobs));
      break;
    }
    case Mode::Truncated: {
      if (trunc_order < 1) throw std::invalid_argument("truncation order must be positive");
      rep.trunc_order = trunc_order;
      TensorEngine<TruncPoly> eng(eq.signature, CoefOps<TruncPoly>{trunc_order});
      const TVec in = eng.basis(state);
      compare_sides(rep, eng.apply_product(in, eq.lhs, jobs), eng.apply_product(in, eq.rhs, jobs));
      break;
    }
  }
  rep.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

VerifyReport verify_tetrahedron(const OccState& state, Mode mode, int jobs) {
  return verify_equation(tetrahedron_spec(), state, mode, jobs);
}

VerifyReport verify_reflection_c(const OccState& state, Mode mode, int jobs) {
  return verify_equation(reflection_c_spec(), state, mode, jobs);
}

VerifyReport verify_reflection_b(const OccState& state, Mode mode, int jobs) {
  return verify_equation(reflection_b_spec(), state, mode, jobs);
}

VerifyReport verify_f4(const OccState& state, int trunc_order, int jobs) {
  return verify_equation(f4_spec(), state, Mode::Truncated, jobs, trunc_order);
}

// ---------------------------------------------------------------------------
// Structure suites

namespace {

bool has_parity(const LaurentPoly& p, int parity) {
  for (const auto& t : p.terms()) {
    if (t.exp < 0 || ((t.exp - parity) % 2) != 0) return false;
  }
  return true;
}

template <std::size_t N, class F>
void sweep(int bound, F&& fn) {
  std::array<int, N> v{};
  while (true) {
    fn(v);
    std::size_t d = 0;
    while (d < N && v[d] == bound) v[d++] = 0;
    if (d == N) return;
    ++v[d];
  }
}

CheckReport r_involution(int bound, int jobs) {
  CheckReport rep;
  rep.name = "R involution bound " + std::to_string(bound);
  TensorEngine<LaurentPoly> eng(SlotSignature::parse("q,q,q"));
  const Factor f{OpKind::R, {0, 1, 2}};
  sweep<3>(bound, [&](const std::array<int, 3>& in) {
    const QVec v = eng.basis(OccState{in[0], in[1], in[2]});
    ++rep.checked;
    if (!(eng.apply(eng.apply(v, f, jobs), f, jobs) == v)) rep.fail("R^2 != 1 on |" + ket_string(OccState{in[0], in[1], in[2]}) + ">");
  });
  return rep;
}

CheckReport k_involution(int bound, int jobs) {
  CheckReport rep;
  rep.name = "K involution bound " + std::to_string(bound);
  TensorEngine<LaurentPoly> eng(SlotSignature::parse("q2,q,q2,q"));
  const Factor f{OpKind::K, {0, 1, 2, 3}};
  sweep<4>(bound, [&](const std::array<int, 4>& in) {
    const OccState s{in[0], in[1], in[2], in[3]};
    const QVec v = eng.basis(s);
    ++rep.checked;
    if (!(eng.apply(eng.apply(v, f, jobs), f, jobs) == v)) rep.fail("K^2 != 1 on |" + ket_string(s) + ">");
  });
  return rep;
}

}  // namespace

CheckReport check_comb_r(int total_bound) {
  CheckReport rep;
  rep.name = "comb R total " + std::to_string(total_bound);
  for (int i = 0; i <= total_bound; ++i)
    for (int j = 0; i + j <= total_bound; ++j)
      for (int k = 0; i + j + k <= total_bound; ++k) {
        const Triple in{i, j, k};
        const Triple out = comb_r(in);
        const std::string at = ket_string(OccState{i, j, k});
        ++rep.checked;
        if (!r_conserves({i, j, k, out[0], out[1], out[2]})) rep.fail("comb R leaves the slice at " + at);
        if (comb_r(out) != in) rep.fail("comb R is not involutive at " + at);
        int ones = 0;
        for (const auto& o : r_slice(in)) {
          const Integer v = r_elem({i, j, k, o[0], o[1], o[2]}).at_zero();
          if (v.is_zero()) continue;
          if (!v.is_one() || o != out) rep.fail("q=0 value disagrees with comb R at " + at);
          ++ones;
        }
        if (ones != 1) rep.fail("q=0 column is not a unit vector at " + at);
      }
  return rep;
}

CheckReport check_comb_k(int total_bound) {
  CheckReport rep;
  rep.name = "comb K total " + std::to_string(total_bound);
  sweep<4>(total_bound, [&](const std::array<int, 4>& in) {
    if (in[0] + in[1] + in[2] + in[3] > total_bound) return;
    const Quad out = comb_k(in);
    const std::string at = ket_string(OccState{in[0], in[1], in[2], in[3]});
    ++rep.checked;
    if (*std::min_element(out.begin(), out.end()) < 0) rep.fail("comb K gives a negative entry at " + at);
    if (!k_conserves({in[0], in[1], in[2], in[3], out[0], out[1], out[2], out[3]})) {
      rep.fail("comb K leaves the slice at " + at);
    }
    if (comb_k(out) != in) rep.fail("comb K is not involutive at " + at);
    int ones = 0;
    for (const auto& o : k_slice(in)) {
      const Integer v = k_elem({in[0], in[1], in[2], in[3], o[0], o[1], o[2], o[3]}).at_zero();
      if (v.is_zero()) continue;
      if (!v.is_one() || o != out) rep.fail("q=0 value disagrees with comb K at " + at);
      ++ones;
    }
    if (ones != 1) rep.fail("q=0 column is not a unit vector at " + at);
  });
  return rep;
}

std::vector<CheckReport> verify_suites(int r_bound, int k_bound, int kernel_bound, int jobs) {
  std::vector<CheckReport> out;
  auto qf2 = [](int n) { return qfact(n, 2); };
  auto qf4 = [](int n) { return qfact(n, 4); };

  {
    CheckReport c, sym, rev, par, orc;
    c.name = "R conservation bound " + std::to_string(r_bound);
    sym.name = "R weighted symmetry bound " + std::to_string(r_bound);
    rev.name = "R reversal symmetry bound " + std::to_string(r_bound);
    par.name = "R polynomiality and parity bound " + std::to_string(r_bound);
    orc.name = "R oracle bound " + std::to_string(r_bound);
    sweep<6>(r_bound, [&](const std::array<int, 6>& v) {
      const RIndex x{v[0], v[1], v[2], v[3], v[4], v[5]};
      const LaurentPoly e = r_elem(x);
      const std::string at = to_string(x);
      if (!r_conserves(x)) {
        ++c.checked;
        if (!e.is_zero()) c.fail("nonzero off the slice at " + at);
        return;
      }
      ++sym.checked;
      const LaurentPoly t = r_elem({x.a, x.b, x.c, x.i, x.j, x.k});
      if (qf2(x.a) * qf2(x.b) * qf2(x.c) * e != qf2(x.i) * qf2(x.j) * qf2(x.k) * t) sym.fail("fails at " + at);
      ++rev.checked;
      if (e != r_elem({x.k, x.j, x.i, x.c, x.b, x.a})) rev.fail("fails at " + at);
      ++par.checked;
      const int xi = (((x.a - x.j) * (x.c - x.j)) % 2 + 2) % 2;
      if (!has_parity(e, xi)) par.fail("fails at " + at);
      ++orc.checked;
      if (e != r_elem_oracle(x)) orc.fail("fails at " + at);
    });
    for (auto* r : {&c, &sym, &rev, &par, &orc}) out.push_back(std::move(*r));
  }
  out.push_back(r_involution(r_bound, jobs));
  out.push_back(check_r_recursions(r_bound));

  {
    CheckReport c, sym, par, orc;
    c.name = "K conservation bound " + std::to_string(k_bound);
    sym.name = "K weighted symmetry bound " + std::to_string(k_bound);
    par.name = "K polynomiality and parity bound " + std::to_string(k_bound);
    orc.name = "K oracle bound " + std::to_string(k_bound);
    sweep<8>(k_bound, [&](const std::array<int, 8>& v) {
      const KIndex x{v[0], v[1], v[2], v[3], v[4], v[5], v[6], v[7]};
      const std::string at = to_string(x);
      if (!k_conserves(x)) {
        ++c.checked;
        if (!k_elem(x).is_zero()) c.fail("nonzero off the slice at " + at);
        return;
      }
      const LaurentPoly e = k_elem(x);
      ++sym.checked;
      const LaurentPoly t = k_elem({x.c, x.m, x.d, x.n, x.a, x.i, x.b, x.j});
      if (qf4(x.c) * qf2(x.m) * qf4(x.d) * qf2(x.n) * e != qf4(x.a) * qf2(x.i) * qf4(x.b) * qf2(x.j) * t) {
        sym.fail("fails at " + at);
      }
      ++par.checked;
      if (!has_parity(e, (x.i * x.j + x.m * x.n) % 2)) par.fail("fails at " + at);
      ++orc.checked;
      if (e != k_elem_oracle(x)) orc.fail("fails at " + at);
    });
    for (auto* r : {&c, &sym, &par, &orc}) out.push_back(std::move(*r));
  }
  out.push_back(k_involution(k_bound, jobs));

  {
    CheckReport ch;
    ch.name = "K kernel symmetry bound " + std::to_string(kernel_bound);
    sweep<6>(kernel_bound, [&](const std::array<int, 6>& v) {
      const auto [a, i, j, c, m, n] = v;
      if (c + m != a + i || n - c != j - a) return;
      ++ch.checked;
      // K^{cm0n}_{ai0j} (q^4)_c (q^2)_m (q^2)_n = (q^4)_a (q^2)_i (q^2)_j K^{ai0j}_{cm0n}
      const LaurentPoly lhs = k_kernel(a, i, j, c, m, n) * qf4(c) * qf2(m) * qf2(n);
      const LaurentPoly rhs = k_kernel(c, m, n, a, i, j) * qf4(a) * qf2(i) * qf2(j);
      if (lhs != rhs) ch.fail("fails at " + to_string(KIndex{a, i, 0, j, c, m, 0, n}));
    });
    out.push_back(std::move(ch));
  }
  out.push_back(check_comb_r(9));
  out.push_back(check_comb_k(8));
  return out;
}

}  // namespace t3d
