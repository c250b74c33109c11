#pragma once

#include <bit>
#include <cstdint>
#include <vector>

#include "spg/errors.hpp"

namespace spg {

// Subset of [0, n) as a word-packed bitset. Value semantics: set operations
// produce new sets, so algorithm states can be snapshotted for certificates.
class VertexSet {
 public:
  VertexSet() : n_(0) {}
  explicit VertexSet(int universe) : n_(universe), w_((universe + 63) / 64, 0) {}

  static VertexSet full(int universe) {
    VertexSet s(universe);
    for (int i = 0; i < universe; ++i) s.w_[i >> 6] |= (1ull << (i & 63));
    return s;
  }

  static VertexSet of(int universe, const std::vector<int>& ids) {
    VertexSet s(universe);
    for (int v : ids) s.insert(v);
    return s;
  }

  int universe() const { return n_; }

  bool contains(int v) const {
    return v >= 0 && v < n_ && (w_[v >> 6] >> (v & 63)) & 1;
  }

  void insert(int v) {
    check_range(v);
    w_[v >> 6] |= (1ull << (v & 63));
  }

  void erase(int v) {
    check_range(v);
    w_[v >> 6] &= ~(1ull << (v & 63));
  }

  int size() const {
    int c = 0;
    for (auto w : w_) c += std::popcount(w);
    return c;
  }

  bool empty() const {
    for (auto w : w_)
      if (w) return false;
    return true;
  }

  VertexSet intersect(const VertexSet& o) const {
    VertexSet r(n_);
    for (std::size_t i = 0; i < w_.size(); ++i) r.w_[i] = w_[i] & o.w_[i];
    return r;
  }

  VertexSet minus(const VertexSet& o) const {
    VertexSet r(n_);
    for (std::size_t i = 0; i < w_.size(); ++i) r.w_[i] = w_[i] & ~o.w_[i];
    return r;
  }

  VertexSet unite(const VertexSet& o) const {
    VertexSet r(n_);
    for (std::size_t i = 0; i < w_.size(); ++i) r.w_[i] = w_[i] | o.w_[i];
    return r;
  }

  int intersection_size(const VertexSet& o) const {
    int c = 0;
    for (std::size_t i = 0; i < w_.size(); ++i) c += std::popcount(w_[i] & o.w_[i]);
    return c;
  }

  bool subset_of(const VertexSet& o) const {
    for (std::size_t i = 0; i < w_.size(); ++i)
      if (w_[i] & ~o.w_[i]) return false;
    return true;
  }

  bool intersects(const VertexSet& o) const {
    for (std::size_t i = 0; i < w_.size(); ++i)
      if (w_[i] & o.w_[i]) return true;
    return false;
  }

  // Members strictly greater than v.
  VertexSet suffix_after(int v) const {
    VertexSet r = *this;
    int cut = v + 1;
    std::size_t word = static_cast<std::size_t>(cut >> 6);
    for (std::size_t i = 0; i < w_.size() && i < word; ++i) r.w_[i] = 0;
    if (word < w_.size() && (cut & 63)) r.w_[word] &= ~((1ull << (cut & 63)) - 1);
    return r;
  }

  // Smallest member, or -1.
  int first() const {
    for (std::size_t i = 0; i < w_.size(); ++i)
      if (w_[i]) return static_cast<int>(i * 64 + std::countr_zero(w_[i]));
    return -1;
  }

  template <class F>
  void for_each(F f) const {
    for (std::size_t i = 0; i < w_.size(); ++i) {
      std::uint64_t w = w_[i];
      while (w) {
        f(static_cast<int>(i * 64 + std::countr_zero(w)));
        w &= w - 1;
      }
    }
  }

  std::vector<int> to_vector() const {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(size()));
    for_each([&](int v) { out.push_back(v); });
    return out;
  }

  friend bool operator==(const VertexSet& a, const VertexSet& b) {
    return a.n_ == b.n_ && a.w_ == b.w_;
  }

 private:
  void check_range(int v) const {
    if (v < 0 || v >= n_)
      throw ContractError("vertex " + std::to_string(v) + " outside universe [0," +
                          std::to_string(n_) + ")");
  }

  int n_;
  std::vector<std::uint64_t> w_;
};

}  // namespace spg
