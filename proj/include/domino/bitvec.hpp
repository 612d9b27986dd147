#pragma once

#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace domino {

// Fixed-width bit vector. Small enough to pass by value; all the grid
// instances this library targets fit in a few machine words.
template <std::size_t Words>
class BitVec {
 public:
  static constexpr std::size_t kBits = Words * 64;
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  constexpr BitVec() = default;

  constexpr bool test(std::size_t i) const {
    return (words_[i >> 6] >> (i & 63)) & 1u;
  }
  constexpr void set(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  constexpr void reset(std::size_t i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  constexpr void flip(std::size_t i) { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

  constexpr std::size_t count() const {
    std::size_t n = 0;
    for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
  }
  constexpr bool none() const {
    for (auto w : words_)
      if (w) return false;
    return true;
  }
  constexpr bool any() const { return !none(); }

  // Index of the first set bit at or after `from`, or npos.
  constexpr std::size_t find_next(std::size_t from) const {
    if (from >= kBits) return npos;
    std::size_t w = from >> 6;
    std::uint64_t cur = words_[w] & (~std::uint64_t{0} << (from & 63));
    while (true) {
      if (cur) return (w << 6) + static_cast<std::size_t>(std::countr_zero(cur));
      if (++w == Words) return npos;
      cur = words_[w];
    }
  }
  constexpr std::size_t find_first() const { return find_next(0); }

  // First clear bit below `limit`, or npos.
  constexpr std::size_t find_first_clear(std::size_t limit) const {
    for (std::size_t w = 0; w < Words; ++w) {
      std::uint64_t inv = ~words_[w];
      if (inv) {
        std::size_t i = (w << 6) + static_cast<std::size_t>(std::countr_zero(inv));
        return i < limit ? i : npos;
      }
    }
    return npos;
  }

  constexpr bool intersects(const BitVec& o) const {
    for (std::size_t w = 0; w < Words; ++w)
      if (words_[w] & o.words_[w]) return true;
    return false;
  }
  constexpr bool is_subset_of(const BitVec& o) const {
    for (std::size_t w = 0; w < Words; ++w)
      if (words_[w] & ~o.words_[w]) return false;
    return true;
  }

  constexpr BitVec& operator^=(const BitVec& o) {
    for (std::size_t w = 0; w < Words; ++w) words_[w] ^= o.words_[w];
    return *this;
  }
  constexpr BitVec& operator|=(const BitVec& o) {
    for (std::size_t w = 0; w < Words; ++w) words_[w] |= o.words_[w];
    return *this;
  }
  constexpr BitVec& operator&=(const BitVec& o) {
    for (std::size_t w = 0; w < Words; ++w) words_[w] &= o.words_[w];
    return *this;
  }
  constexpr BitVec operator~() const {
    BitVec r;
    for (std::size_t w = 0; w < Words; ++w) r.words_[w] = ~words_[w];
    return r;
  }
  friend constexpr BitVec operator^(BitVec a, const BitVec& b) { return a ^= b; }
  friend constexpr BitVec operator|(BitVec a, const BitVec& b) { return a |= b; }
  friend constexpr BitVec operator&(BitVec a, const BitVec& b) { return a &= b; }
  friend constexpr bool operator==(const BitVec&, const BitVec&) = default;
  friend constexpr auto operator<=>(const BitVec&, const BitVec&) = default;

  // 64-bit fingerprint (splitmix64 finalizer folded over the words).
  constexpr std::uint64_t fingerprint() const {
    std::uint64_t h = 0x9e3779b97f4a7c15ull;
    for (auto w : words_) {
      std::uint64_t z = w + h + 0x9e3779b97f4a7c15ull;
      z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
      z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
      h = z ^ (z >> 31) ^ (h << 1);
    }
    return h;
  }

  std::vector<int> indices() const {
    std::vector<int> out;
    for (auto i = find_first(); i != npos; i = find_next(i + 1)) out.push_back(static_cast<int>(i));
    return out;
  }

  template <typename F>
  constexpr void for_each(F&& f) const {
    for (std::size_t w = 0; w < Words; ++w) {
      std::uint64_t cur = words_[w];
      while (cur) {
        f(static_cast<int>((w << 6) + static_cast<std::size_t>(std::countr_zero(cur))));
        cur &= cur - 1;
      }
    }
  }

 private:
  std::array<std::uint64_t, Words> words_{};
};

inline constexpr std::size_t kMaxVertices = 128;
inline constexpr std::size_t kMaxEdges = 256;

using VertexSet = BitVec<kMaxVertices / 64>;
using EdgeSet = BitVec<kMaxEdges / 64>;

struct BitVecHash {
  template <std::size_t W>
  std::size_t operator()(const BitVec<W>& b) const noexcept {
    return static_cast<std::size_t>(b.fingerprint());
  }
};

}  // namespace domino
