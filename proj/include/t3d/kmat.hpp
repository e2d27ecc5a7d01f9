#pragma once

// The 3D K: matrix elements K^{cmdn}_{aibj} on slots of base (q^2, q, q^2, q),
// the recursion oracle, the q = 0 bijection and the index-reversed variant.

#include <array>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "t3d/qpoly.hpp"

namespace t3d {

/// Input (a,i,b,j), output (c,m,d,n).
struct KIndex {
  int a = 0, i = 0, b = 0, j = 0;
  int c = 0, m = 0, d = 0, n = 0;
  friend bool operator==(const KIndex&, const KIndex&) = default;
};

using Quad = std::array<int, 4>;

inline bool k_conserves(const KIndex& x) {
  return x.c + x.m + x.d == x.a + x.i + x.b && x.d + x.n - x.c == x.b + x.j - x.a;
}

/// Raised when a closed-form sum fails to clear its denominator.
class PolynomialityError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// K^{cmdn}_{aibj}; zero off the conservation slice or for negative indices.
LaurentPoly k_elem(const KIndex& idx);
LaurentPoly k_elem_uncached(const KIndex& idx);
/// Independent evaluation by the b -> 0, d -> 0, n,j -> 0 reductions.
LaurentPoly k_elem_oracle(const KIndex& idx);
/// The b = d = 0 kernel K^{cm0n}_{ai0j}.
LaurentPoly k_kernel(int a, int i, int j, int c, int m, int n);

/// Element of the reversed K: both quadruples are read back to front, so
/// kb_elem({x1..x4},{y1..y4}) = k_elem({x4..x1},{y4..y1}).
LaurentPoly kb_elem(const Quad& in, const Quad& out);

std::vector<Quad> k_slice(const Quad& in);
std::vector<std::pair<Quad, LaurentPoly>> k_column(const Quad& in);

/// q = 0 image of (c,m,d,n).
Quad comb_k(const Quad& in);

struct ParamExponentsK {
  int eps = 0;
  int e2 = 0;
  int e3 = 0;
  int rho = 0;
  friend bool operator==(const ParamExponentsK&, const ParamExponentsK&) = default;
};

/// Throws std::invalid_argument off the conservation slice.
ParamExponentsK k_param_exponents(const KIndex& idx);

std::string to_string(const KIndex& idx);

}  // namespace t3d
