#pragma once

// Birational 3D R and K over several semifields: multivariate rational
// functions, exact rationals and min-plus expressions.

#include <gmpxx.h>

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "t3d/integer.hpp"
#include "t3d/tensorop.hpp"

namespace t3d {

/// Polynomial over Z in the indeterminates x_0 .. x_{kMaxVars-1}.
/// Terms are sorted lexicographically, leading term first.
class MPoly {
 public:
  static constexpr int kMaxVars = 16;
  using Mono = std::array<std::uint16_t, kMaxVars>;
  struct MTerm {
    Mono exp;
    Integer coef;
    friend bool operator==(const MTerm&, const MTerm&) = default;
  };

  MPoly() = default;
  MPoly(Integer c);                    // NOLINT(google-explicit-constructor)
  MPoly(int c) : MPoly(Integer(c)) {}  // NOLINT(google-explicit-constructor)
  static MPoly var(int idx);

  [[nodiscard]] std::span<const MTerm> terms() const { return terms_; }
  [[nodiscard]] bool is_zero() const { return terms_.empty(); }
  [[nodiscard]] bool is_constant() const;
  [[nodiscard]] const Integer& leading_coef() const { return terms_.front().coef; }
  [[nodiscard]] int degree(int v) const;
  /// Largest variable index that occurs, -1 for constants.
  [[nodiscard]] int main_var() const;
  [[nodiscard]] Integer content() const;

  /// Quotient when `d` divides exactly, otherwise nullopt.
  [[nodiscard]] std::optional<MPoly> exact_div(const MPoly& d) const;
  /// gcd with positive leading coefficient; gcd(0,0) = 0.
  static MPoly gcd(const MPoly& a, const MPoly& b);

  [[nodiscard]] mpq_class eval(std::span<const mpq_class> x) const;
  [[nodiscard]] std::string to_string(std::span<const std::string> names = {}) const;

  MPoly& operator+=(const MPoly& o);
  MPoly& operator-=(const MPoly& o);
  void negate();
  friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
  friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
  friend MPoly operator-(MPoly a) {
    a.negate();
    return a;
  }
  friend MPoly operator*(const MPoly& a, const MPoly& b);
  friend bool operator==(const MPoly&, const MPoly&) = default;

 private:
  friend struct MPolyAccess;
  std::vector<MTerm> terms_;
};

/// Reduced quotient of two MPoly with den of positive leading coefficient.
class MRat {
 public:
  MRat() : den_(1) {}
  MRat(MPoly num);                   // NOLINT(google-explicit-constructor)
  MRat(int c) : MRat(MPoly(c)) {}    // NOLINT(google-explicit-constructor)
  MRat(MPoly num, MPoly den);        // throws std::domain_error when den == 0
  static MRat var(int idx) { return MRat(MPoly::var(idx)); }

  [[nodiscard]] const MPoly& num() const { return num_; }
  [[nodiscard]] const MPoly& den() const { return den_; }
  [[nodiscard]] bool is_zero() const { return num_.is_zero(); }
  [[nodiscard]] mpq_class eval(std::span<const mpq_class> x) const;
  [[nodiscard]] std::string to_string(std::span<const std::string> names = {}) const;

  friend MRat operator+(const MRat& a, const MRat& b);
  friend MRat operator-(const MRat& a, const MRat& b);
  friend MRat operator*(const MRat& a, const MRat& b);
  friend MRat operator/(const MRat& a, const MRat& b);
  friend MRat operator-(const MRat& a) { return MRat(-a.num_, a.den_); }
  friend bool operator==(const MRat& a, const MRat& b) { return a.num_ * b.den_ == b.num_ * a.den_; }

 private:
  MPoly num_;
  MPoly den_;
};

/// Piecewise-linear function of integer variables: the image of a
/// subtraction-free rational expression under ab -> a+b, a+b -> min(a,b).
class TropExpr {
 public:
  TropExpr();
  static TropExpr var(int idx);
  static TropExpr constant(long c);

  [[nodiscard]] long eval(std::span<const long> x) const;
  [[nodiscard]] std::string to_string(std::span<const std::string> names = {}) const;

  /// Tropical sum: min.
  friend TropExpr operator+(const TropExpr& a, const TropExpr& b);
  /// Tropical product: ordinary sum.
  friend TropExpr operator*(const TropExpr& a, const TropExpr& b);
  /// Tropical quotient: difference.
  friend TropExpr operator/(const TropExpr& a, const TropExpr& b);

  struct Node;

 private:
  explicit TropExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

namespace detail {
inline void require_nonzero(const MRat& d) {
  if (d.is_zero()) throw std::domain_error("birational map: denominator vanishes identically");
}
inline void require_nonzero(const mpq_class& d) {
  if (sgn(d) == 0) throw std::domain_error("birational map: denominator vanishes");
}
inline void require_nonzero(const TropExpr&) {}
}  // namespace detail

/// (c,b,a) -> (bc/(a+c), a+c, ab/(a+c)).
template <class T>
std::array<T, 3> birational_r(const std::array<T, 3>& cba) {
  const T& c = cba[0];
  const T& b = cba[1];
  const T& a = cba[2];
  const T s = a + c;
  detail::require_nonzero(s);
  return {T(b * c / s), s, T(a * b / s)};
}

/// (d,c,b,a) -> (bcd/A, A^2/B, B/A, ab^2c/B),
/// A = ab+ad+cd, B = ab^2+2abd+ad^2+cd^2.
template <class T>
std::array<T, 4> birational_k(const std::array<T, 4>& dcba) {
  const T& d = dcba[0];
  const T& c = dcba[1];
  const T& b = dcba[2];
  const T& a = dcba[3];
  const T A = a * b + a * d + c * d;
  const T abd = a * b * d;
  const T B = a * b * b + abd + abd + a * d * d + c * d * d;
  detail::require_nonzero(A);
  detail::require_nonzero(B);
  return {T(b * c * d / A), T(A * A / B), T(B / A), T(a * b * b * c / B)};
}

/// Applies R, S (same as R here) and K factors to a point, right to left.
template <class T>
std::vector<T> apply_birational(std::vector<T> x, std::span<const Factor> factors) {
  for (auto it = factors.rbegin(); it != factors.rend(); ++it) {
    std::vector<int> s = it->slots;
    if (it->kind == OpKind::KRev) std::reverse(s.begin(), s.end());
    if (s.size() == 3) {
      const auto y = birational_r<T>({x[s[0]], x[s[1]], x[s[2]]});
      for (std::size_t t = 0; t < 3; ++t) x[s[t]] = y[t];
    } else {
      const auto y = birational_k<T>({x[s[0]], x[s[1]], x[s[2]], x[s[3]]});
      for (std::size_t t = 0; t < 4; ++t) x[s[t]] = y[t];
    }
  }
  return x;
}

struct BiratReport {
  std::string name;
  std::string strategy;  // symbolic, sampled or grid
  bool pass = true;
  long checked = 0;
  long failures = 0;
  std::vector<std::string> details;
  std::optional<std::uint64_t> seed;
  /// Tropical checks: every (input, output) identification consistent with
  /// the combinatorial map on the discovery grid, and the one in use.
  std::vector<std::string> identifications;
  std::string identification;
  double elapsed_ms = 0;
  void fail(std::string what);
};

/// G, X and Y generator identities, plus the involution property of both
/// maps, as symbolic MRat equalities.
std::vector<BiratReport> check_matrix_identities();

enum class BirEquation { Tetrahedron, Reflection };
enum class BirStrategy { Symbolic, Sampled };

/// Sampled points have numerators and denominators in [1, 10^6].
BiratReport verify_birational_equations(BirEquation eq, BirStrategy strategy, int samples = 32,
                                        std::uint64_t seed = 20240601, int jobs = 1);

enum class BirMap { R, K };

/// Min-plus image of the map against comb_r / comb_k on [0,bound]^n.
BiratReport tropicalize_and_compare(BirMap map, int bound);

std::string reports_to_json(std::span<const BiratReport> reports);

}  // namespace t3d
