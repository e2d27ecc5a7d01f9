#pragma once

// Sharded hash map used to memoize matrix elements across worker threads.

#include <array>
#include <functional>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <unordered_map>

namespace t3d {

template <class Key, class Value, class Hash = std::hash<Key>, std::size_t Shards = 64>
class ShardedMemo {
 public:
  std::optional<Value> find(const Key& k) const {
    const Shard& s = shard(k);
    std::shared_lock lock(s.mu);
    auto it = s.map.find(k);
    if (it == s.map.end()) return std::nullopt;
    return it->second;
  }

  // Identical values may be computed concurrently; the first insert wins.
  const Value& insert(const Key& k, Value v) {
    Shard& s = shard(k);
    std::unique_lock lock(s.mu);
    return s.map.try_emplace(k, std::move(v)).first->second;
  }

  template <class F>
  Value get_or_compute(const Key& k, F&& compute) {
    if (auto v = find(k)) return *std::move(v);
    Value v = compute();
    insert(k, v);
    return v;
  }

  std::size_t size() const {
    std::size_t n = 0;
    for (const auto& s : shards_) {
      std::shared_lock lock(s.mu);
      n += s.map.size();
    }
    return n;
  }

  void clear() {
    for (auto& s : shards_) {
      std::unique_lock lock(s.mu);
      s.map.clear();
    }
  }

 private:
  struct Shard {
    mutable std::shared_mutex mu;
    std::unordered_map<Key, Value, Hash> map;
  };
  Shard& shard(const Key& k) { return shards_[Hash{}(k) % Shards]; }
  const Shard& shard(const Key& k) const { return shards_[Hash{}(k) % Shards]; }

  std::array<Shard, Shards> shards_;
};

/// Packs small non-negative integers into one 64-bit key, `bits` bits each.
/// Returns nullopt if any value does not fit.
template <std::size_t N>
std::optional<std::uint64_t> pack_key(const std::array<int, N>& v, int bits) {
  std::uint64_t key = 0;
  for (int x : v) {
    if (x < 0 || x >= (1 << bits)) return std::nullopt;
    key = (key << bits) | static_cast<std::uint64_t>(x);
  }
  return key;
}

struct U64Hash {
  std::size_t operator()(std::uint64_t x) const {
    x ^= x >> 33;
    x *= 0xff51afd7ed558ccdULL;
    x ^= x >> 33;
    x *= 0xc4ceb9fe1a85ec53ULL;
    x ^= x >> 33;
    return static_cast<std::size_t>(x);
  }
};

}  // namespace t3d
