// Acceptance run: one PASS/FAIL line per criterion. Expected values and
// tolerances are fixed here; every comparison is exact.

#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include "t3d/birat.hpp"
#include "t3d/kmat.hpp"
#include "t3d/rmat.hpp"
#include "t3d/verify.hpp"

using namespace t3d;

namespace {

constexpr int kOracleBoundR = 4;
constexpr int kOracleBoundK = 3;
constexpr int kSuiteBoundR = 5;
constexpr int kSuiteBoundK = 3;
constexpr int kKernelBound = 5;
constexpr int kIntertwiningBound = 2;
constexpr int kIntertwiningBoundHigh = 3;
constexpr std::size_t kTetrahedronKets = 300;
constexpr std::size_t kTypeBKets = 1410;
constexpr std::size_t kF4Kets = 533;
constexpr int kF4Order = 6;
constexpr int kBirationalSamples = 32;
constexpr std::uint64_t kBirationalSeed = 20240601;
constexpr int kTropicalBound = 6;
constexpr int kCombTotal = 8;

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;
  void require(bool ok, std::string what) {
    if (!ok) {
      pass = false;
      notes.push_back("failed: " + std::move(what));
    }
  }
  void note(std::string what) { notes.push_back(std::move(what)); }
  void absorb(const CheckReport& c) {
    require(c.pass, c.name + (c.details.empty() ? "" : " (" + c.details.front() + ")"));
  }
};

LaurentPoly Q(int e, int c = 1) { return LaurentPoly::monomial(e, c); }
LaurentPoly omq(int e) { return LaurentPoly::one_minus_q(e); }
LaurentPoly P(std::vector<Term> t) { return LaurentPoly::from_terms(std::move(t)); }

Outcome golden() {
  Outcome o;
  const std::map<Triple, LaurentPoly> r = {
      {{0, 4, 1}, Q(2, -1) * omq(4) * omq(6) * omq(8)},
      {{1, 3, 2}, omq(6) * omq(8) * P({{0, 1}, {4, -1}, {6, -1}, {8, -1}, {10, -1}})},
      {{2, 2, 3}, Q(2) * P({{0, 1}, {2, 1}}) * P({{0, 1}, {4, 1}}) * omq(6) * P({{0, 1}, {6, -1}, {10, -1}})},
      {{3, 1, 4}, Q(6) * P({{0, 1}, {2, 1}, {4, 1}, {8, -1}, {10, -1}, {12, -1}, {14, -1}})},
      {{4, 0, 5}, Q(12)},
  };
  int nonzero = 0;
  for (const auto& out : r_slice({3, 1, 4})) {
    const LaurentPoly v = r_elem({3, 1, 4, out[0], out[1], out[2]});
    const auto it = r.find(out);
    if (it == r.end()) {
      o.require(v.is_zero(), "R element outside the golden list is nonzero");
    } else {
      ++nonzero;
      o.require(v == it->second, "R golden element mismatch");
    }
  }
  o.require(nonzero == 5, "R column 314 does not have five golden entries");
  const std::map<Quad, LaurentPoly> k = {
      {{1, 3, 0, 0}, Q(8) * omq(8)},
      {{2, 1, 1, 0}, Q(4, -1) * P({{0, 1}, {8, -1}, {14, 1}})},
      {{2, 2, 0, 1}, Q(6, -1) * P({{0, 1}, {2, 1}}) * P({{0, 1}, {2, -1}, {4, 1}, {6, -1}, {10, -1}})},
      {{3, 0, 1, 1}, P({{0, 1}, {8, -1}, {14, 1}})},
      {{3, 1, 0, 2}, Q(10, -1) * P({{0, 1}, {2, 1}, {4, 1}})},
      {{4, 0, 0, 3}, Q(4)},
  };
  nonzero = 0;
  for (const auto& out : k_slice({2, 1, 1, 0})) {
    const LaurentPoly v = k_elem({2, 1, 1, 0, out[0], out[1], out[2], out[3]});
    const auto it = k.find(out);
    if (it == k.end()) {
      o.require(v.is_zero(), "K element outside the golden list is nonzero");
    } else {
      ++nonzero;
      o.require(v == it->second, "K golden element mismatch");
    }
  }
  o.require(nonzero == 6, "K column 2110 does not have six golden entries");
  o.note("R column 314: 5 nonzero; K column 2110: 6 nonzero");
  return o;
}

Outcome oracles() {
  Outcome o;
  long nr = 0, nk = 0;
  for (int i = 0; i <= kOracleBoundR; ++i)
    for (int j = 0; j <= kOracleBoundR; ++j)
      for (int k = 0; k <= kOracleBoundR; ++k)
        for (const auto& out : r_slice({i, j, k})) {
          if (*std::max_element(out.begin(), out.end()) > kOracleBoundR) continue;
          const RIndex x{i, j, k, out[0], out[1], out[2]};
          ++nr;
          o.require(r_elem(x) == r_elem_oracle(x), "R oracle at " + to_string(x));
        }
  for (int a = 0; a <= kOracleBoundK; ++a)
    for (int i = 0; i <= kOracleBoundK; ++i)
      for (int b = 0; b <= kOracleBoundK; ++b)
        for (int j = 0; j <= kOracleBoundK; ++j)
          for (const auto& out : k_slice({a, i, b, j})) {
            if (*std::max_element(out.begin(), out.end()) > kOracleBoundK) continue;
            const KIndex x{a, i, b, j, out[0], out[1], out[2], out[3]};
            ++nk;
            o.require(k_elem(x) == k_elem_oracle(x), "K oracle at " + to_string(x));
          }
  o.note(std::to_string(nr) + " R and " + std::to_string(nk) + " K elements compared");
  return o;
}

Outcome suites(int jobs) {
  Outcome o;
  const auto reps = verify_suites(kSuiteBoundR, kSuiteBoundK, kKernelBound, jobs);
  for (const auto& c : reps) o.absorb(c);
  o.note(std::to_string(reps.size()) + " suites");
  return o;
}

Outcome intertwining(int jobs) {
  Outcome o;
  for (const auto& rel : intertwining_relations()) {
    const bool high = (rel.r == 2 && rel.s == 2) || (rel.r == 5 && rel.s == 5) || (rel.r == 2 && rel.s == 5);
    o.absorb(check_intertwining(rel.r, rel.s, high ? kIntertwiningBoundHigh : kIntertwiningBound, jobs));
  }
  o.note(std::to_string(intertwining_relations().size()) + " relations");
  return o;
}

Outcome tetrahedron(int jobs) {
  Outcome o;
  const auto c = verify_tetrahedron(parse_state("314516"), Mode::Comb, jobs);
  o.require(c.pass, "combinatorial sides disagree");
  o.require(c.lhs_chain == std::vector<std::string>{"314516", "132516", "532156", "512354", "515327"},
            "left chain");
  o.require(c.rhs_chain == std::vector<std::string>{"314516", "311543", "351147", "151327", "515327"},
            "right chain");
  const auto q = verify_tetrahedron(parse_state("314516"), Mode::Quantum, jobs);
  o.require(q.pass, "quantum sides differ");
  o.require(q.lhs_count == kTetrahedronKets && q.rhs_count == kTetrahedronKets,
            "expected " + std::to_string(kTetrahedronKets) + " kets per side, got " + std::to_string(q.lhs_count) +
                " and " + std::to_string(q.rhs_count));
  o.note("|314516>: sides " + std::string(q.pass ? "equal" : "differ") + ", " + std::to_string(q.lhs_count) +
         " kets each");
  if (q.lhs_count != kTetrahedronKets) {
    const auto m = verify_tetrahedron(parse_state("615413"), Mode::Quantum, jobs);
    o.note("diagnostic: the mirrored input |615413> gives " + std::to_string(m.lhs_count) + " kets per side (" +
           (m.pass ? "equal" : "differ") + ")");
  }
  return o;
}

Outcome reflection_c(int jobs) {
  Outcome o;
  const auto c = verify_reflection_c(parse_state("211034212"), Mode::Comb, jobs);
  o.require(c.pass, "combinatorial sides disagree");
  o.require(c.lhs_chain == std::vector<std::string>{"211034212", "301134212", "601131242", "631101272",
                                                     "621102271", "622102173", "622702119", "622520119"},
            "left chain");
  o.require(c.rhs_chain == std::vector<std::string>{"211034212", "211307212", "211207221", "212207123",
                                                     "272201129", "252221109", "352220119", "622520119"},
            "right chain");
  const auto q = verify_reflection_c(parse_state("211034212"), Mode::Quantum, jobs);
  o.require(q.pass, "quantum sides differ");
  o.note("|211034212>: " + std::to_string(q.lhs_count) + " kets per side");
  return o;
}

Outcome reflection_b(int jobs) {
  Outcome o;
  const auto q = verify_reflection_b(parse_state("112111111"), Mode::Quantum, jobs);
  o.require(q.pass, "sides differ");
  o.require(q.lhs_count == kTypeBKets && q.rhs_count == kTypeBKets,
            "expected " + std::to_string(kTypeBKets) + " kets, got " + std::to_string(q.lhs_count));
  o.note("|112111111>: " + std::to_string(q.lhs_count) + " kets per side");
  return o;
}

Outcome f4(int jobs) {
  Outcome o;
  const EquationSpec& eq = f4_spec();
  // Unique: flipping any single slot's base breaks some factor.
  for (std::size_t s = 0; s < eq.slots(); ++s) {
    SlotSignature alt = eq.signature;
    alt.bases[s] = alt.bases[s] == Base::Q ? Base::Q2 : Base::Q;
    bool broken = false;
    for (const auto* side : {&eq.lhs, &eq.rhs})
      for (const auto& f : *side) {
        try {
          validate_factor(f, alt);
        } catch (const SignatureError&) {
          broken = true;
        }
      }
    o.require(broken, "slot " + std::to_string(s + 1) + " base is not forced");
  }
  const auto q = verify_f4(f4_reference_state(), kF4Order, jobs);
  o.require(q.pass, "sides differ mod q^" + std::to_string(kF4Order));
  o.require(q.lhs_count == kF4Kets && q.rhs_count == kF4Kets,
            "expected " + std::to_string(kF4Kets) + " kets, got " + std::to_string(q.lhs_count));
  o.note("signature " + eq.signature.to_string() + "; " + std::to_string(q.lhs_count) + " kets mod q^" +
         std::to_string(kF4Order));
  return o;
}

Outcome birational(int jobs) {
  Outcome o;
  std::vector<BiratReport> reps = check_matrix_identities();
  reps.push_back(verify_birational_equations(BirEquation::Tetrahedron, BirStrategy::Symbolic));
  reps.push_back(verify_birational_equations(BirEquation::Reflection, BirStrategy::Sampled, kBirationalSamples,
                                             kBirationalSeed, jobs));
  reps.push_back(tropicalize_and_compare(BirMap::R, kTropicalBound));
  reps.push_back(tropicalize_and_compare(BirMap::K, kTropicalBound));
  for (const auto& r : reps) {
    o.require(r.pass, r.name);
    if (!r.identification.empty()) o.note(r.name + ": " + r.identification);
  }
  o.require(reps[reps.size() - 3].checked >= kBirationalSamples, "too few sample points");
  return o;
}

Outcome comb_bijectivity() {
  Outcome o;
  o.absorb(check_comb_r(kCombTotal));
  o.absorb(check_comb_k(kCombTotal));
  return o;
}

}  // namespace

int main() {
  int jobs = 1;
  if (const char* env = std::getenv("T3D_JOBS")) jobs = std::max(1, std::atoi(env));
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"C1 golden elements", golden},
      {"C2 oracle equivalence", oracles},
      {"C3 structure suites", [&] { return suites(jobs); }},
      {"C4 intertwining relations", [&] { return intertwining(jobs); }},
      {"C5 tetrahedron equation", [&] { return tetrahedron(jobs); }},
      {"C6 reflection equation, type C", [&] { return reflection_c(jobs); }},
      {"C7 reflection equation, type B", [&] { return reflection_b(jobs); }},
      {"C8 F4 relation", [&] { return f4(jobs); }},
      {"C9 birational layer", [&] { return birational(jobs); }},
      {"C10 combinatorial bijectivity", comb_bijectivity},
  };
  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o.pass = false;
      o.notes.push_back(std::string("exception: ") + e.what());
    }
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    if (!o.pass) ++failed;
    std::ostringstream line;
    line << (o.pass ? "PASS " : "FAIL ") << name << " [" << static_cast<long>(ms) << " ms]";
    std::cout << line.str() << '\n';
    for (const auto& n : o.notes) std::cout << "     " << n << '\n';
    std::cout.flush();
  }
  std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size() << " criteria pass\n";
  return failed == 0 ? 0 : 1;
}
