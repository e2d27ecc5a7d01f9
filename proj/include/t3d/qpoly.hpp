#pragma once

// Exact univariate arithmetic in q: Laurent polynomials over Z, reduced
// fractions of them, and polynomials truncated modulo q^N.

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "t3d/integer.hpp"

namespace t3d {

struct Term {
  int exp;
  Integer coef;
  friend bool operator==(const Term&, const Term&) = default;
};

/// Sparse Laurent polynomial in q with integer coefficients.
///
/// Terms are kept sorted by increasing exponent and no stored coefficient
/// is zero, so structural equality is polynomial equality.
class LaurentPoly {
 public:
  LaurentPoly() = default;
  LaurentPoly(Integer c) {  // NOLINT(google-explicit-constructor)
    if (!c.is_zero()) terms_.push_back({0, std::move(c)});
  }
  LaurentPoly(int c) : LaurentPoly(Integer(c)) {}  // NOLINT(google-explicit-constructor)

  static LaurentPoly monomial(int exp, Integer coef = 1);
  /// 1 - q^exp
  static LaurentPoly one_minus_q(int exp);
  /// Builds from arbitrary (exponent, coefficient) pairs; duplicates are summed.
  static LaurentPoly from_terms(std::vector<Term> terms);

  [[nodiscard]] std::span<const Term> terms() const { return terms_; }
  [[nodiscard]] std::size_t size() const { return terms_.size(); }
  [[nodiscard]] bool is_zero() const { return terms_.empty(); }
  [[nodiscard]] bool is_one() const { return terms_.size() == 1 && terms_[0].exp == 0 && terms_[0].coef.is_one(); }
  [[nodiscard]] bool is_monomial() const { return terms_.size() == 1; }
  // min_exp/max_exp require a nonzero polynomial.
  [[nodiscard]] int min_exp() const { return terms_.front().exp; }
  [[nodiscard]] int max_exp() const { return terms_.back().exp; }
  [[nodiscard]] const Integer& leading_coef() const { return terms_.back().coef; }
  [[nodiscard]] Integer coef(int exp) const;
  /// Value at q = 0; throws std::domain_error if a negative power is present.
  [[nodiscard]] Integer at_zero() const;
  /// gcd of all coefficients (0 for the zero polynomial).
  [[nodiscard]] Integer content() const;

  /// Multiplies by q^k.
  [[nodiscard]] LaurentPoly shifted(int k) const;
  /// Substitutes q -> q^factor.
  [[nodiscard]] LaurentPoly dilated(int factor) const;
  [[nodiscard]] LaurentPoly scaled(const Integer& c) const;
  /// Divides every coefficient by c; c must divide each one.
  [[nodiscard]] LaurentPoly divexact(const Integer& c) const;

  /// Quotient in Z[q, 1/q] if `d` divides this exactly, otherwise nullopt.
  [[nodiscard]] std::optional<LaurentPoly> exact_div(const LaurentPoly& d) const;

  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  LaurentPoly& operator*=(const LaurentPoly& o);
  void negate();

  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  friend LaurentPoly operator-(LaurentPoly a) {
    a.negate();
    return a;
  }
  friend bool operator==(const LaurentPoly&, const LaurentPoly&) = default;

  /// e.g. "-q^2 + q^6 + 1"; "0" for zero.
  [[nodiscard]] std::string to_string() const;

 private:
  explicit LaurentPoly(std::vector<Term> sorted_nonzero) : terms_(std::move(sorted_nonzero)) {}
  void add_scaled(const LaurentPoly& o, int sign);

  std::vector<Term> terms_;
};

/// gcd in Z[q] of the q-adic parts, normalized with positive leading
/// coefficient. Inputs may be Laurent; monomial factors are ignored.
LaurentPoly poly_gcd(const LaurentPoly& a, const LaurentPoly& b);

/// Reduced fraction num/den.
///
/// Normal form: gcd(num, den) is a unit, den has lowest exponent 0 and a
/// positive leading coefficient, so a value is a Laurent polynomial iff
/// den == 1.
class QRat {
 public:
  QRat() : den_(1) {}
  QRat(LaurentPoly p) : num_(std::move(p)), den_(1) {}  // NOLINT(google-explicit-constructor)

  /// Throws std::domain_error if den is zero.
  static QRat reduce(LaurentPoly num, LaurentPoly den);

  [[nodiscard]] const LaurentPoly& num() const { return num_; }
  [[nodiscard]] const LaurentPoly& den() const { return den_; }
  [[nodiscard]] bool is_zero() const { return num_.is_zero(); }
  [[nodiscard]] bool is_poly() const { return den_.is_one(); }
  /// Throws std::domain_error unless is_poly().
  [[nodiscard]] const LaurentPoly& as_poly() const;

  friend QRat operator+(const QRat& a, const QRat& b);
  friend QRat operator-(const QRat& a, const QRat& b);
  friend QRat operator*(const QRat& a, const QRat& b);
  friend QRat operator/(const QRat& a, const QRat& b);
  /// Equality by cross-multiplication.
  friend bool operator==(const QRat& a, const QRat& b);

  [[nodiscard]] std::string to_string() const;

 private:
  QRat(LaurentPoly n, LaurentPoly d, int /*tag*/) : num_(std::move(n)), den_(std::move(d)) {}
  LaurentPoly num_;
  LaurentPoly den_;
};

class TruncationError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Polynomial in q modulo q^order, non-negative exponents only.
class TruncPoly {
 public:
  explicit TruncPoly(int order = 1);
  TruncPoly(int order, Integer constant);

  [[nodiscard]] int order() const { return order_; }
  [[nodiscard]] bool is_zero() const;
  [[nodiscard]] const Integer& coef(int exp) const { return coefs_.at(static_cast<std::size_t>(exp)); }
  /// Nonzero terms in increasing exponent order.
  [[nodiscard]] std::vector<Term> terms() const;
  /// Lowest exponent carrying a nonzero coefficient, or order() if zero.
  [[nodiscard]] int valuation() const;

  TruncPoly& operator+=(const TruncPoly& o);
  TruncPoly& operator-=(const TruncPoly& o);
  friend TruncPoly operator+(TruncPoly a, const TruncPoly& b) { return a += b; }
  friend TruncPoly operator-(TruncPoly a, const TruncPoly& b) { return a -= b; }
  friend TruncPoly operator*(const TruncPoly& a, const TruncPoly& b);
  friend bool operator==(const TruncPoly& a, const TruncPoly& b);

  [[nodiscard]] LaurentPoly to_laurent() const;
  [[nodiscard]] std::string to_string() const;

 private:
  friend TruncPoly trunc_reduce(const LaurentPoly& p, int order);
  void check_order(const TruncPoly& o) const;
  int order_;
  std::vector<Integer> coefs_;  // dense, length order_
};

/// Keeps the coefficients of q^0..q^{order-1}. Throws TruncationError on a
/// negative exponent.
TruncPoly trunc_reduce(const LaurentPoly& p, int order);

}  // namespace t3d
