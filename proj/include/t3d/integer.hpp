#pragma once

// Arbitrary-precision integer with an inline int64 fast path.
//
// Values that fit in a signed 64-bit word live in `small_`; anything larger
// is promoted to a GMP integer on the heap and demoted again as soon as an
// operation brings it back into range. Matrix elements of the 3D R and K are
// overwhelmingly small, so almost all arithmetic stays on the fast path.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <memory>
#include <ostream>
#include <string>
#include <string_view>

namespace t3d {

class Integer {
 public:
  Integer() = default;
  Integer(std::int64_t v) : small_(v) {}  // NOLINT(google-explicit-constructor)
  Integer(int v) : small_(v) {}           // NOLINT(google-explicit-constructor)
  explicit Integer(const mpz_class& v) { assign_big(v); }

  Integer(const Integer& o) : small_(o.small_) {
    if (o.big_) big_ = std::make_unique<mpz_class>(*o.big_);
  }
  Integer(Integer&&) noexcept = default;
  Integer& operator=(const Integer& o) {
    if (this != &o) {
      small_ = o.small_;
      big_ = o.big_ ? std::make_unique<mpz_class>(*o.big_) : nullptr;
    }
    return *this;
  }
  Integer& operator=(Integer&&) noexcept = default;

  /// Parses an optionally signed decimal string; throws std::invalid_argument.
  static Integer from_string(std::string_view s);

  [[nodiscard]] bool is_small() const { return !big_; }
  [[nodiscard]] bool is_zero() const { return !big_ && small_ == 0; }
  [[nodiscard]] bool is_one() const { return !big_ && small_ == 1; }
  [[nodiscard]] int sign() const;
  /// Only meaningful when is_small().
  [[nodiscard]] std::int64_t small_value() const { return small_; }
  [[nodiscard]] mpz_class to_mpz() const;
  [[nodiscard]] std::string to_string() const;

  Integer& operator+=(const Integer& o);
  Integer& operator-=(const Integer& o);
  Integer& operator*=(const Integer& o);
  /// this += a * b without a temporary in the common case.
  void add_mul(const Integer& a, const Integer& b);
  void sub_mul(const Integer& a, const Integer& b);
  void negate();

  friend Integer operator+(Integer a, const Integer& b) { return a += b; }
  friend Integer operator-(Integer a, const Integer& b) { return a -= b; }
  friend Integer operator*(Integer a, const Integer& b) { return a *= b; }
  friend Integer operator-(Integer a) {
    a.negate();
    return a;
  }

  /// Exact quotient; the caller guarantees divisibility.
  [[nodiscard]] Integer divexact(const Integer& d) const;
  [[nodiscard]] bool divisible_by(const Integer& d) const;
  [[nodiscard]] Integer abs() const;
  static Integer gcd(const Integer& a, const Integer& b);

  friend bool operator==(const Integer& a, const Integer& b);
  friend std::strong_ordering operator<=>(const Integer& a, const Integer& b);

  friend std::ostream& operator<<(std::ostream& os, const Integer& v) {
    return os << v.to_string();
  }

 private:
  void assign_big(const mpz_class& v);

  std::int64_t small_ = 0;
  std::unique_ptr<mpz_class> big_;
};

}  // namespace t3d
