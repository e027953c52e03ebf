#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <thread>
#include <vector>

#include "errors.hpp"
#include "matgroup.hpp"

namespace spherical {

/// Packs a d x d matrix over F_q into one integer, row-major with entry (0,0) most significant,
/// so that key order is lexicographic order of the row-major entry list.
class MatrixCodec {
 public:
  MatrixCodec(int d, std::uint64_t q) : d_(d), q_(q) {
    unsigned __int128 v = 1;
    for (int i = 0; i < d * d; ++i) {
      v *= q;
      if (v > static_cast<unsigned __int128>(~std::uint64_t{0}))
        throw InvalidArgument("matrices of this size do not pack into 64 bits");
    }
  }

  std::uint64_t encode(const Mat& m) const {
    std::uint64_t key = 0;
    for (int i = 0; i < d_; ++i)
      for (int j = 0; j < d_; ++j) key = key * q_ + m(i, j);
    return key;
  }

  Mat decode(std::uint64_t key) const {
    Mat m(d_);
    for (int i = d_ - 1; i >= 0; --i)
      for (int j = d_ - 1; j >= 0; --j) {
        m(i, j) = static_cast<elem>(key % q_);
        key /= q_;
      }
    return m;
  }

  int dim() const { return d_; }

 private:
  int d_;
  std::uint64_t q_;
};

/// An insertion-ordered set of packed matrices with open-addressing lookup.
class ElementSet {
 public:
  static constexpr std::uint32_t npos = ~std::uint32_t{0};

  explicit ElementSet(MatrixCodec codec, std::size_t expected = 16) : codec_(codec) {
    keys_.reserve(expected);
    rehash(capacity_for(expected));
  }

  const MatrixCodec& codec() const { return codec_; }
  std::size_t size() const { return keys_.size(); }
  std::uint64_t key(std::size_t i) const { return keys_[i]; }
  Mat at(std::size_t i) const { return codec_.decode(keys_[i]); }
  const std::vector<std::uint64_t>& keys() const { return keys_; }

  /// Index of the key, inserting it if new; second is true on insertion.
  std::pair<std::uint32_t, bool> insert(std::uint64_t k) {
    if ((keys_.size() + 1) * 2 > slots_.size()) rehash(slots_.size() * 2);
    std::size_t h = slot_of(k);
    while (slots_[h] != 0) {
      if (keys_[slots_[h] - 1] == k) return {slots_[h] - 1, false};
      h = (h + 1) & mask_;
    }
    keys_.push_back(k);
    slots_[h] = static_cast<std::uint32_t>(keys_.size());
    return {static_cast<std::uint32_t>(keys_.size() - 1), true};
  }
  std::pair<std::uint32_t, bool> insert(const Mat& m) { return insert(codec_.encode(m)); }

  std::uint32_t find(std::uint64_t k) const {
    std::size_t h = slot_of(k);
    while (slots_[h] != 0) {
      if (keys_[slots_[h] - 1] == k) return slots_[h] - 1;
      h = (h + 1) & mask_;
    }
    return npos;
  }
  std::uint32_t find(const Mat& m) const { return find(codec_.encode(m)); }
  bool contains(const Mat& m) const { return find(m) != npos; }

 private:
  static std::size_t capacity_for(std::size_t n) {
    std::size_t c = 16;
    while (c < 2 * n) c *= 2;
    return c;
  }

  static std::uint64_t mix(std::uint64_t x) {
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

  std::size_t slot_of(std::uint64_t k) const { return mix(k) & mask_; }

  void rehash(std::size_t cap) {
    slots_.assign(cap, 0);
    mask_ = cap - 1;
    for (std::size_t i = 0; i < keys_.size(); ++i) {
      std::size_t h = slot_of(keys_[i]);
      while (slots_[h] != 0) h = (h + 1) & mask_;
      slots_[h] = static_cast<std::uint32_t>(i + 1);
    }
  }

  MatrixCodec codec_;
  std::vector<std::uint64_t> keys_;
  std::vector<std::uint32_t> slots_;
  std::size_t mask_ = 0;
};

inline constexpr std::uint64_t kDefaultBudget = 100000000;

/// All elements of G(F_q), as the closure of the generators under right multiplication.
inline ElementSet enumerate_elements(const MatrixGroup& G, std::uint64_t budget = kDefaultBudget) {
  auto order = G.order();
  if (!order || *order > budget)
    throw BudgetExceeded("|" + G.name() + "(F_" + std::to_string(G.field().q()) + ")| = " +
                         (order ? std::to_string(*order) : std::string("> 2^64")) + " exceeds the budget " +
                         std::to_string(budget));
  if (*order > ElementSet::npos - 1) throw BudgetExceeded("group too large for 32-bit element indices");
  const Field& F = G.field();
  ElementSet set(MatrixCodec(G.dim(), F.q()), *order);
  auto gens = G.generators();
  set.insert(Mat::identity(G.dim()));
  for (std::size_t i = 0; i < set.size(); ++i) {
    Mat g = set.at(i);
    for (const Mat& s : gens) set.insert(mul(F, g, s));
  }
  if (set.size() != *order)
    throw ConsistencyError("enumerated " + std::to_string(set.size()) + " elements, order formula gives " +
                           std::to_string(*order));
  return set;
}

/// Runs fn(begin, end, worker) over [0, n) split into contiguous chunks.
template <class Fn>
void parallel_for(std::size_t n, int threads, Fn&& fn) {
  if (threads <= 1 || n < 1024) {
    fn(std::size_t{0}, n, 0);
    return;
  }
  std::vector<std::thread> pool;
  std::size_t chunk = (n + threads - 1) / threads;
  for (int t = 0; t < threads; ++t) {
    std::size_t b = t * chunk, e = std::min(n, b + chunk);
    if (b >= e) break;
    pool.emplace_back([&fn, b, e, t] { fn(b, e, t); });
  }
  for (auto& th : pool) th.join();
}

}  // namespace spherical
