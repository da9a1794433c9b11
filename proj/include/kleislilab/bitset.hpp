#pragma once

#include <bit>
#include <cassert>
#include <cstdint>
#include <string>
#include <vector>

namespace klab {

/** Bit vector of fixed width, indexed by carrier position.
 *
 * Subsets of a finite carrier are represented this way throughout: bit i
 * corresponds to the i-th element in the carrier's canonical order. The
 * canonical order on subsets themselves is numeric on the bit pattern
 * (bit 0 least significant), which matches enumerating masks 0,1,2,...
 */
class Bitset {
public:
  Bitset() = default;
  explicit Bitset(int n) : n_(n), w_((n + 63) / 64, 0) {}

  static Bitset full(int n) {
    Bitset b(n);
    for (int i = 0; i < n; ++i) b.set(i);
    return b;
  }
  static Bitset single(int n, int i) {
    Bitset b(n);
    b.set(i);
    return b;
  }
  static Bitset from_mask(int n, std::uint64_t mask) {
    assert(n <= 64);
    Bitset b(n);
    if (!b.w_.empty()) b.w_[0] = mask & b.high_mask();
    return b;
  }

  int size() const { return n_; }
  bool empty_carrier() const { return n_ == 0; }

  bool test(int i) const {
    assert(0 <= i && i < n_);
    return (w_[i >> 6] >> (i & 63)) & 1u;
  }
  void set(int i) {
    assert(0 <= i && i < n_);
    w_[i >> 6] |= std::uint64_t{1} << (i & 63);
  }
  void reset(int i) {
    assert(0 <= i && i < n_);
    w_[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
  }

  int count() const {
    int c = 0;
    for (auto w : w_) c += std::popcount(w);
    return c;
  }
  bool any() const {
    for (auto w : w_)
      if (w) return true;
    return false;
  }
  bool none() const { return !any(); }

  bool subset_of(const Bitset& o) const {
    assert(n_ == o.n_);
    for (std::size_t k = 0; k < w_.size(); ++k)
      if (w_[k] & ~o.w_[k]) return false;
    return true;
  }
  bool intersects(const Bitset& o) const {
    assert(n_ == o.n_);
    for (std::size_t k = 0; k < w_.size(); ++k)
      if (w_[k] & o.w_[k]) return true;
    return false;
  }

  Bitset operator|(const Bitset& o) const {
    assert(n_ == o.n_);
    Bitset r(n_);
    for (std::size_t k = 0; k < w_.size(); ++k) r.w_[k] = w_[k] | o.w_[k];
    return r;
  }
  Bitset operator&(const Bitset& o) const {
    assert(n_ == o.n_);
    Bitset r(n_);
    for (std::size_t k = 0; k < w_.size(); ++k) r.w_[k] = w_[k] & o.w_[k];
    return r;
  }
  Bitset operator~() const {
    Bitset r(n_);
    for (std::size_t k = 0; k < w_.size(); ++k) r.w_[k] = ~w_[k];
    if (!r.w_.empty()) r.w_.back() &= last_word_mask();
    return r;
  }
  Bitset minus(const Bitset& o) const {
    assert(n_ == o.n_);
    Bitset r(n_);
    for (std::size_t k = 0; k < w_.size(); ++k) r.w_[k] = w_[k] & ~o.w_[k];
    return r;
  }

  bool operator==(const Bitset& o) const { return n_ == o.n_ && w_ == o.w_; }
  bool operator!=(const Bitset& o) const { return !(*this == o); }

  // Numeric order on the underlying pattern; ties carriers first so mixed
  // widths still sort deterministically inside ordered containers.
  bool operator<(const Bitset& o) const {
    if (n_ != o.n_) return n_ < o.n_;
    for (std::size_t k = w_.size(); k-- > 0;)
      if (w_[k] != o.w_[k]) return w_[k] < o.w_[k];
    return false;
  }

  std::uint64_t mask() const {
    assert(n_ <= 64);
    return w_.empty() ? 0 : w_[0];
  }

  std::vector<int> indices() const {
    std::vector<int> out;
    out.reserve(count());
    for (std::size_t k = 0; k < w_.size(); ++k) {
      std::uint64_t w = w_[k];
      while (w) {
        int b = std::countr_zero(w);
        out.push_back(static_cast<int>(k * 64 + b));
        w &= w - 1;
      }
    }
    return out;
  }

  template <class Fn>
  void for_each(Fn&& fn) const {
    for (std::size_t k = 0; k < w_.size(); ++k) {
      std::uint64_t w = w_[k];
      while (w) {
        int b = std::countr_zero(w);
        fn(static_cast<int>(k * 64 + b));
        w &= w - 1;
      }
    }
  }

private:
  std::uint64_t high_mask() const {
    return n_ >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n_) - 1;
  }
  std::uint64_t last_word_mask() const {
    int rem = n_ & 63;
    return rem == 0 ? ~std::uint64_t{0} : (std::uint64_t{1} << rem) - 1;
  }

  int n_ = 0;
  std::vector<std::uint64_t> w_;
};

}  // namespace klab
