#pragma once

// Sparse vectors on tensor products of Fock spaces and the action of R, S
// and K on chosen slots. Coefficients are exact Laurent polynomials or
// polynomials truncated mod q^N.

#include <array>
#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "t3d/qpoly.hpp"

namespace t3d {

enum class Base : std::uint8_t { Q, Q2 };

class SignatureError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct SlotSignature {
  std::vector<Base> bases;

  /// "q,q2,q" or "q q2 q".
  static SlotSignature parse(std::string_view text);
  /// All slots base q except the listed 0-based positions, which are q^2.
  static SlotSignature with_q2(std::size_t slots, std::initializer_list<int> q2_slots);
  [[nodiscard]] std::size_t size() const { return bases.size(); }
  [[nodiscard]] std::string to_string() const;
  friend bool operator==(const SlotSignature&, const SlotSignature&) = default;
};

/// Occupation numbers of up to kMaxSlots Fock spaces.
class OccState {
 public:
  static constexpr std::size_t kMaxSlots = 32;
  static constexpr int kMaxOcc = 0xffff;

  OccState() = default;
  explicit OccState(std::span<const int> occ);
  OccState(std::initializer_list<int> occ) : OccState(std::span<const int>(occ.begin(), occ.size())) {}

  [[nodiscard]] std::size_t size() const { return n_; }
  [[nodiscard]] int operator[](std::size_t i) const { return occ_[i]; }
  void set(std::size_t i, int v);
  [[nodiscard]] std::vector<int> to_vector() const;
  [[nodiscard]] int total() const;
  [[nodiscard]] std::size_t hash() const;

  friend bool operator==(const OccState& a, const OccState& b) { return a.n_ == b.n_ && a.occ_ == b.occ_; }
  friend std::strong_ordering operator<=>(const OccState& a, const OccState& b) {
    if (auto c = a.n_ <=> b.n_; c != 0) return c;
    return a.occ_ <=> b.occ_;
  }

 private:
  std::array<std::uint16_t, kMaxSlots> occ_{};
  std::uint8_t n_ = 0;
};

struct OccHash {
  std::size_t operator()(const OccState& s) const { return s.hash(); }
};

/// "314516" when every entry is a single digit, otherwise "3,1,14,...".
std::string ket_string(const OccState& s);
/// Accepts comma or whitespace separated integers, or a bare digit string.
OccState parse_state(std::string_view text);

/// Sparse vector with entries sorted by state and no zero coefficients.
template <class C>
class SparseVec {
 public:
  using Entry = std::pair<OccState, C>;

  SparseVec() = default;
  static SparseVec basis(const OccState& s, C coef) {
    SparseVec v;
    if (!coef.is_zero()) v.entries_.emplace_back(s, std::move(coef));
    return v;
  }
  static SparseVec from_map(std::unordered_map<OccState, C, OccHash>&& m);
  static SparseVec from_entries(std::vector<Entry> entries);

  [[nodiscard]] std::span<const Entry> entries() const { return entries_; }
  [[nodiscard]] std::size_t size() const { return entries_.size(); }
  [[nodiscard]] bool is_zero() const { return entries_.empty(); }
  [[nodiscard]] const C* find(const OccState& s) const;
  /// Total number of nonzero q-monomials over all coefficients.
  [[nodiscard]] std::size_t term_count() const;

  friend bool operator==(const SparseVec& a, const SparseVec& b) { return a.entries_ == b.entries_; }
  friend SparseVec operator+(const SparseVec& a, const SparseVec& b) { return combine(a, b, 1); }
  friend SparseVec operator-(const SparseVec& a, const SparseVec& b) { return combine(a, b, -1); }

 private:
  static SparseVec combine(const SparseVec& a, const SparseVec& b, int sign);
  std::vector<Entry> entries_;
};

enum class OpKind : std::uint8_t { R, S, K, KRev };

/// One operator factor. Slots are 0-based. For K they receive (a,i,b,j) in
/// the given order; KRev acts as K on the reversed slot tuple.
struct Factor {
  OpKind kind;
  std::vector<int> slots;
  friend bool operator==(const Factor&, const Factor&) = default;
};

std::string to_string(const Factor& f);
/// Bases an operator requires at its slots, in the order of Factor::slots.
std::vector<Base> required_bases(OpKind kind);
/// Throws SignatureError on a base mismatch, repeated slot or bad arity.
void validate_factor(const Factor& f, const SlotSignature& sig);

/// Coefficient conversion for the engine.
template <class C>
struct CoefOps;

template <>
struct CoefOps<LaurentPoly> {
  [[nodiscard]] LaurentPoly from(const LaurentPoly& p) const { return p; }
  [[nodiscard]] LaurentPoly one() const { return LaurentPoly(1); }
};

template <>
struct CoefOps<TruncPoly> {
  int order = 6;
  [[nodiscard]] TruncPoly from(const LaurentPoly& p) const { return trunc_reduce(p, order); }
  [[nodiscard]] TruncPoly one() const { return TruncPoly(order, 1); }
};

/// Applies operator factors to sparse vectors over a fixed slot signature.
/// Matrix columns are cached per engine and shared by all worker threads.
template <class C>
class TensorEngine {
 public:
  explicit TensorEngine(SlotSignature sig, CoefOps<C> ops = {});
  ~TensorEngine();
  TensorEngine(const TensorEngine&) = delete;
  TensorEngine& operator=(const TensorEngine&) = delete;

  [[nodiscard]] const SlotSignature& signature() const { return sig_; }
  [[nodiscard]] const CoefOps<C>& ops() const { return ops_; }
  [[nodiscard]] SparseVec<C> basis(const OccState& s) const;

  /// jobs <= 1 runs the serial reference path.
  [[nodiscard]] SparseVec<C> apply(const SparseVec<C>& v, const Factor& f, int jobs = 1) const;
  [[nodiscard]] SparseVec<C> apply_serial(const SparseVec<C>& v, const Factor& f) const;
  [[nodiscard]] SparseVec<C> apply_parallel(const SparseVec<C>& v, const Factor& f, int jobs) const;
  /// Applies factors right to left, i.e. factors.back() first.
  [[nodiscard]] SparseVec<C> apply_product(const SparseVec<C>& v, std::span<const Factor> factors, int jobs = 1) const;

 private:
  struct Column;
  struct Cache;
  std::shared_ptr<const Column> column(OpKind kind, const std::array<int, 4>& in) const;

  SlotSignature sig_;
  CoefOps<C> ops_;
  std::unique_ptr<Cache> cache_;
};

extern template class SparseVec<LaurentPoly>;
extern template class SparseVec<TruncPoly>;
extern template class TensorEngine<LaurentPoly>;
extern template class TensorEngine<TruncPoly>;

using QVec = SparseVec<LaurentPoly>;
using TVec = SparseVec<TruncPoly>;

/// Convenience wrappers over a one-off engine. Slots are 0-based.
QVec apply_r(const QVec& v, const SlotSignature& sig, const std::array<int, 3>& slots, OpKind variant = OpKind::R);
QVec apply_k(const QVec& v, const SlotSignature& sig, const std::array<int, 4>& slots, bool reversed = false);

/// q = 0 image of a basis state under one factor.
OccState apply_comb(const OccState& s, const Factor& f);

// ---------------------------------------------------------------------------
// q-oscillators

enum class Osc : std::uint8_t { One, Plus, Minus, K };

/// Action of a generator on |m>; nullopt when it annihilates the state.
std::optional<std::pair<int, LaurentPoly>> osc_apply(Osc op, Base base, int m);

/// sign * q^qexp * (ops[0] x ops[1] x ops[2] x ops[3]) on slots of base (q^2, q, q^2, q).
struct OscTerm {
  int sign;
  int qexp;
  std::array<Osc, 4> ops;
};

/// X K = K Y.
struct IntertwiningRelation {
  int r;
  int s;
  std::vector<OscTerm> lhs;
  std::vector<OscTerm> rhs;
  [[nodiscard]] std::string name() const;
};

/// The sixteen listed relations <rs>, 2 <= r,s <= 5.
const std::vector<IntertwiningRelation>& intertwining_relations();

QVec apply_osc(const QVec& v, std::span<const OscTerm> terms);

struct CheckReport {
  std::string name;
  bool pass = true;
  long checked = 0;
  long failures = 0;
  std::vector<std::string> details;  // first few failures
  void fail(std::string what);
};

/// Compares X K|in> with K Y|in> for every |a,i,b,j> with entries <= bound.
CheckReport check_intertwining(int r, int s, int bound, int jobs = 1);

/// Checks the two R recursions in i and j and the b-lowering identity elementwise.
CheckReport check_r_recursions(int bound);

}  // namespace t3d
