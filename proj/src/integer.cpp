#include "t3d/integer.hpp"

#include <limits>
#include <stdexcept>

namespace t3d {

namespace {

bool fits_int64(const mpz_class& v) {
  static_assert(sizeof(long) == 8, "LP64 platform expected");
  return mpz_fits_slong_p(v.get_mpz_t()) != 0;
}

mpz_class to_mpz(std::int64_t v) { return mpz_class(static_cast<long>(v)); }

}  // namespace

Integer Integer::from_string(std::string_view s) {
  std::string str(s);
  if (str.empty()) throw std::invalid_argument("empty integer literal");
  std::size_t start = (str[0] == '-' || str[0] == '+') ? 1 : 0;
  if (start == str.size()) throw std::invalid_argument("bad integer literal: " + str);
  for (std::size_t i = start; i < str.size(); ++i) {
    if (str[i] < '0' || str[i] > '9') throw std::invalid_argument("bad integer literal: " + str);
  }
  if (str[0] == '+') str.erase(0, 1);
  return Integer(mpz_class(str, 10));
}

void Integer::assign_big(const mpz_class& v) {
  if (fits_int64(v)) {
    small_ = v.get_si();
    big_.reset();
  } else {
    small_ = 0;
    big_ = std::make_unique<mpz_class>(v);
  }
}

int Integer::sign() const {
  if (big_) return sgn(*big_);
  return (small_ > 0) - (small_ < 0);
}

mpz_class Integer::to_mpz() const { return big_ ? *big_ : t3d::to_mpz(small_); }

std::string Integer::to_string() const { return big_ ? big_->get_str() : std::to_string(small_); }

Integer& Integer::operator+=(const Integer& o) {
  if (!big_ && !o.big_) {
    std::int64_t r;
    if (!__builtin_add_overflow(small_, o.small_, &r)) {
      small_ = r;
      return *this;
    }
  }
  assign_big(to_mpz() + o.to_mpz());
  return *this;
}

Integer& Integer::operator-=(const Integer& o) {
  if (!big_ && !o.big_) {
    std::int64_t r;
    if (!__builtin_sub_overflow(small_, o.small_, &r)) {
      small_ = r;
      return *this;
    }
  }
  assign_big(to_mpz() - o.to_mpz());
  return *this;
}

Integer& Integer::operator*=(const Integer& o) {
  if (!big_ && !o.big_) {
    std::int64_t r;
    if (!__builtin_mul_overflow(small_, o.small_, &r)) {
      small_ = r;
      return *this;
    }
  }
  assign_big(to_mpz() * o.to_mpz());
  return *this;
}

void Integer::add_mul(const Integer& a, const Integer& b) {
  if (!big_ && !a.big_ && !b.big_) {
    std::int64_t p, r;
    if (!__builtin_mul_overflow(a.small_, b.small_, &p) &&
        !__builtin_add_overflow(small_, p, &r)) {
      small_ = r;
      return;
    }
  }
  assign_big(to_mpz() + a.to_mpz() * b.to_mpz());
}

void Integer::sub_mul(const Integer& a, const Integer& b) {
  if (!big_ && !a.big_ && !b.big_) {
    std::int64_t p, r;
    if (!__builtin_mul_overflow(a.small_, b.small_, &p) &&
        !__builtin_sub_overflow(small_, p, &r)) {
      small_ = r;
      return;
    }
  }
  assign_big(to_mpz() - a.to_mpz() * b.to_mpz());
}

void Integer::negate() {
  if (!big_ && small_ != std::numeric_limits<std::int64_t>::min()) {
    small_ = -small_;
    return;
  }
  assign_big(-to_mpz());
}

Integer Integer::divexact(const Integer& d) const {
  if (d.is_zero()) throw std::domain_error("integer division by zero");
  if (!big_ && !d.big_ && !(small_ == std::numeric_limits<std::int64_t>::min() && d.small_ == -1)) {
    return Integer(small_ / d.small_);
  }
  mpz_class q;
  mpz_class n = to_mpz();
  mpz_class dd = d.to_mpz();
  mpz_divexact(q.get_mpz_t(), n.get_mpz_t(), dd.get_mpz_t());
  return Integer(q);
}

bool Integer::divisible_by(const Integer& d) const {
  if (d.is_zero()) return is_zero();
  if (!big_ && !d.big_) {
    if (d.small_ == -1) return true;
    return small_ % d.small_ == 0;
  }
  mpz_class n = to_mpz();
  mpz_class dd = d.to_mpz();
  return mpz_divisible_p(n.get_mpz_t(), dd.get_mpz_t()) != 0;
}

Integer Integer::abs() const {
  Integer r = *this;
  if (r.sign() < 0) r.negate();
  return r;
}

Integer Integer::gcd(const Integer& a, const Integer& b) {
  if (!a.big_ && !b.big_ && a.small_ != std::numeric_limits<std::int64_t>::min() &&
      b.small_ != std::numeric_limits<std::int64_t>::min()) {
    std::int64_t x = a.small_ < 0 ? -a.small_ : a.small_;
    std::int64_t y = b.small_ < 0 ? -b.small_ : b.small_;
    while (y != 0) {
      std::int64_t t = x % y;
      x = y;
      y = t;
    }
    return Integer(x);
  }
  mpz_class g;
  mpz_class x = a.to_mpz();
  mpz_class y = b.to_mpz();
  mpz_gcd(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
  return Integer(g);
}

bool operator==(const Integer& a, const Integer& b) {
  if (!a.big_ && !b.big_) return a.small_ == b.small_;
  if (a.big_ && b.big_) return *a.big_ == *b.big_;
  return false;  // canonical form: a big value never fits in int64
}

std::strong_ordering operator<=>(const Integer& a, const Integer& b) {
  if (!a.big_ && !b.big_) return a.small_ <=> b.small_;
  int c = cmp(a.to_mpz(), b.to_mpz());
  return c < 0 ? std::strong_ordering::less
               : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

}  // namespace t3d
