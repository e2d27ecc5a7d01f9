#pragma once

// q-Pochhammer symbols (p)_n = (1-p)(1-p^2)...(1-p^n) with p = q^base, the
// multinomial bracket built from them, and Gaussian binomials.

#include <span>

#include "t3d/qpoly.hpp"

namespace t3d {

/// Grow-only table of (p)_0, (p)_1, ... for p = q^base. Safe for concurrent use.
class QFactCache {
 public:
  explicit QFactCache(int base);
  QFactCache(const QFactCache&) = delete;
  QFactCache& operator=(const QFactCache&) = delete;
  ~QFactCache();

  [[nodiscard]] int base() const { return base_; }
  /// Reference stays valid for the lifetime of the cache.
  const LaurentPoly& get(int n);

 private:
  struct Impl;
  int base_;
  Impl* impl_;
};

/// (q^base)_n; throws std::invalid_argument for n < 0 or base not in {1,2,4}.
const LaurentPoly& qfact(int n, int base);

/// prod_{t=lo}^{hi} (1 - q^{base*t}); 1 when lo > hi.
LaurentPoly qpoch_range(int lo, int hi, int base);

/// Gaussian binomial [n choose k] in p = q^base; zero unless 0 <= k <= n.
const LaurentPoly& qbinomial(int n, int k, int base);

/// prod (p)_{numers} / prod (p)_{denoms}, or zero if any index is negative.
QRat qbracket(std::span<const int> numers, std::span<const int> denoms, int base);
QRat qbracket(std::initializer_list<int> numers, std::initializer_list<int> denoms, int base);

}  // namespace t3d
