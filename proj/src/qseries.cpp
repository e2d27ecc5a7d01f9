#include "t3d/qseries.hpp"

#include <algorithm>
#include <deque>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>

namespace t3d {

namespace {

int base_slot(int base) {
  switch (base) {
    case 1: return 0;
    case 2: return 1;
    case 4: return 2;
    default: throw std::invalid_argument("unsupported q-series base " + std::to_string(base));
  }
}

constexpr int kBases[3] = {1, 2, 4};

struct BinomialTable {
  std::shared_mutex mu;
  std::deque<std::vector<LaurentPoly>> rows;
};

const LaurentPoly& zero_poly() {
  static const LaurentPoly z;
  return z;
}

}  // namespace

struct QFactCache::Impl {
  std::shared_mutex mu;
  std::deque<LaurentPoly> table{LaurentPoly(1)};
};

QFactCache::QFactCache(int base) : base_(base), impl_(new Impl) {}

QFactCache::~QFactCache() { delete impl_; }

const LaurentPoly& QFactCache::get(int n) {
  if (n < 0) throw std::invalid_argument("q-factorial of negative index " + std::to_string(n));
  const auto idx = static_cast<std::size_t>(n);
  {
    std::shared_lock lock(impl_->mu);
    if (idx < impl_->table.size()) return impl_->table[idx];
  }
  std::unique_lock lock(impl_->mu);
  auto& t = impl_->table;
  while (t.size() <= idx) {
    const int j = static_cast<int>(t.size());
    t.push_back(t.back() * LaurentPoly::one_minus_q(base_ * j));
  }
  return t[idx];
}

const LaurentPoly& qfact(int n, int base) {
  static QFactCache caches[3] = {QFactCache(1), QFactCache(2), QFactCache(4)};
  return caches[base_slot(base)].get(n);
}

LaurentPoly qpoch_range(int lo, int hi, int base) {
  base_slot(base);
  LaurentPoly r(1);
  for (int t = std::max(lo, 1); t <= hi; ++t) r *= LaurentPoly::one_minus_q(base * t);
  return r;
}

const LaurentPoly& qbinomial(int n, int k, int base) {
  static BinomialTable tables[3];
  const int slot = base_slot(base);
  if (n < 0 || k < 0 || k > n) return zero_poly();
  BinomialTable& tb = tables[slot];
  const auto row = static_cast<std::size_t>(n);
  {
    std::shared_lock lock(tb.mu);
    if (row < tb.rows.size()) return tb.rows[row][static_cast<std::size_t>(k)];
  }
  std::unique_lock lock(tb.mu);
  const int p = kBases[slot];
  while (tb.rows.size() <= row) {
    const int m = static_cast<int>(tb.rows.size());
    std::vector<LaurentPoly> next(static_cast<std::size_t>(m) + 1);
    next[0] = LaurentPoly(1);
    next[static_cast<std::size_t>(m)] = LaurentPoly(1);
    const auto& prev = tb.rows.back();
    // [m, r] = [m-1, r-1] + p^r [m-1, r]
    for (int r = 1; r < m; ++r) {
      next[static_cast<std::size_t>(r)] =
          prev[static_cast<std::size_t>(r) - 1] + prev[static_cast<std::size_t>(r)].shifted(p * r);
    }
    tb.rows.push_back(std::move(next));
  }
  return tb.rows[row][static_cast<std::size_t>(k)];
}

QRat qbracket(std::span<const int> numers, std::span<const int> denoms, int base) {
  base_slot(base);
  auto negative = [](int v) { return v < 0; };
  if (std::any_of(numers.begin(), numers.end(), negative) || std::any_of(denoms.begin(), denoms.end(), negative)) {
    return QRat();
  }
  std::vector<int> num(numers.begin(), numers.end());
  std::vector<int> den(denoms.begin(), denoms.end());
  std::sort(num.begin(), num.end());
  std::sort(den.begin(), den.end());
  std::vector<int> n_left;
  std::vector<int> d_left;
  std::set_difference(num.begin(), num.end(), den.begin(), den.end(), std::back_inserter(n_left));
  std::set_difference(den.begin(), den.end(), num.begin(), num.end(), std::back_inserter(d_left));
  LaurentPoly top(1);
  LaurentPoly bottom(1);
  for (int v : n_left) top *= qfact(v, base);
  for (int v : d_left) bottom *= qfact(v, base);
  return QRat::reduce(std::move(top), std::move(bottom));
}

QRat qbracket(std::initializer_list<int> numers, std::initializer_list<int> denoms, int base) {
  return qbracket(std::span<const int>(numers.begin(), numers.size()),
                  std::span<const int>(denoms.begin(), denoms.size()), base);
}

}  // namespace t3d
