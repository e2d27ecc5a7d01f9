#pragma once

// Equation suites: the tetrahedron equation, the 3D reflection equations of
// type C and B, the F4 relation, and exhaustive structure checks on R and K.

#include <string>
#include <vector>

#include "t3d/tensorop.hpp"

namespace t3d {

/// Both sides of an operator identity. Factors are listed left to right as
/// written and applied right to left.
struct EquationSpec {
  std::string name;
  SlotSignature signature;
  std::vector<Factor> lhs;
  std::vector<Factor> rhs;
  [[nodiscard]] std::size_t slots() const { return signature.size(); }
};

/// Parses "R(3,5,6) K(16,10,8,7) S(1,2,3)" or the compact "R356 K1234"
/// with 1-based slots. A K written with decreasing slots becomes KRev on
/// the increasing tuple.
std::vector<Factor> parse_factors(std::string_view text);

/// Bases forced by the factors; throws SignatureError if two factors
/// disagree or some slot is left unconstrained.
SlotSignature infer_signature(std::size_t slots, const std::vector<Factor>& lhs, const std::vector<Factor>& rhs);

const EquationSpec& tetrahedron_spec();
const EquationSpec& reflection_c_spec();
const EquationSpec& reflection_b_spec();
const EquationSpec& f4_spec();

enum class Mode { Quantum, Comb, Truncated };

std::string to_string(Mode m);

struct VerifyReport {
  std::string equation;
  std::string input;
  Mode mode = Mode::Quantum;
  int trunc_order = 0;
  bool pass = false;
  std::size_t lhs_count = 0;  // kets with a nonzero coefficient
  std::size_t rhs_count = 0;
  std::size_t lhs_terms = 0;  // q-monomials summed over all coefficients
  std::size_t rhs_terms = 0;
  double elapsed_ms = 0;
  std::vector<std::string> lhs_chain;  // comb mode: states after each factor
  std::vector<std::string> rhs_chain;
  std::vector<std::string> details;
};

/// Evaluates both sides of `eq` on a basis state.
VerifyReport verify_equation(const EquationSpec& eq, const OccState& state, Mode mode, int jobs = 1,
                             int trunc_order = 6);

VerifyReport verify_tetrahedron(const OccState& state, Mode mode, int jobs = 1);
VerifyReport verify_reflection_c(const OccState& state, Mode mode, int jobs = 1);
VerifyReport verify_reflection_b(const OccState& state, Mode mode = Mode::Quantum, int jobs = 1);
VerifyReport verify_f4(const OccState& state, int trunc_order = 6, int jobs = 1);

/// The input states used by the reference computations.
OccState f4_reference_state();

/// Exhaustive structure checks: R suites for indices <= r_bound, K suites
/// for indices <= k_bound, kernel symmetry for indices <= kernel_bound.
std::vector<CheckReport> verify_suites(int r_bound, int k_bound, int kernel_bound, int jobs = 1);
inline std::vector<CheckReport> verify_suites(int bound, int jobs = 1) { return verify_suites(bound, bound, bound, jobs); }

/// comb_r / comb_k on every in-state with total <= bound: conservation,
/// involution, and agreement with the q = 0 values of the quantum elements.
CheckReport check_comb_r(int total_bound);
CheckReport check_comb_k(int total_bound);

}  // namespace t3d
