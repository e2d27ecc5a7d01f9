#pragma once

// The 3D R: matrix elements R^{abc}_{ijk}, a recursion-based oracle, the
// combinatorial bijection at q = 0 and the variant S obtained by q -> q^2.

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "t3d/qpoly.hpp"

namespace t3d {

/// Input (i,j,k), output (a,b,c).
struct RIndex {
  int i = 0, j = 0, k = 0;
  int a = 0, b = 0, c = 0;
  friend bool operator==(const RIndex&, const RIndex&) = default;
};

using Triple = std::array<int, 3>;

inline bool r_conserves(const RIndex& x) { return x.i + x.j == x.a + x.b && x.j + x.k == x.b + x.c; }

/// R^{abc}_{ijk}; zero off the conservation slice or for negative indices.
LaurentPoly r_elem(const RIndex& idx);
/// Same value without the memo table (used by tests and benchmarks).
LaurentPoly r_elem_uncached(const RIndex& idx);
/// Independent evaluation through the P_m recursion.
LaurentPoly r_elem_oracle(const RIndex& idx);
/// r_elem with every exponent doubled.
LaurentPoly s_elem(const RIndex& idx);

/// Outputs (a,b,c) sharing the conserved charges of the input, in increasing b.
std::vector<Triple> r_slice(const Triple& in);

/// Nonzero column of R (or S when doubled) for a fixed input.
std::vector<std::pair<Triple, LaurentPoly>> r_column(const Triple& in, bool doubled = false);

/// (i,j,k) -> (j + (i-k)_+, min(i,k), j + (k-i)_+).
Triple comb_r(const Triple& in);

enum class RGauge { SL, Sp, SpInverse };

struct ParamExponentsR {
  int e1 = 0;
  int e2 = 0;
  int eps = 0;
  int sig = 0;
  friend bool operator==(const ParamExponentsR&, const ParamExponentsR&) = default;
};

/// Exponents of the parameters multiplying R^{abc}_{ijk}. Throws
/// std::invalid_argument when the index violates conservation.
ParamExponentsR r_param_exponents(const RIndex& idx, RGauge gauge);

std::string to_string(const RIndex& idx);

}  // namespace t3d
