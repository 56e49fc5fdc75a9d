#pragma once

#include <cstdint>
#include <bit>
#include <cstddef>
#include <functional>

namespace stellar {

// Fixed 128-bit set, indexed 0..127.  Large enough for the positive roots
// of any finite type up to rank 8 (E8 has 120).
struct Bits {
  std::uint64_t w0 = 0, w1 = 0;

  void set(int i) {
    if (i < 64) w0 |= (std::uint64_t{1} << i);
    else w1 |= (std::uint64_t{1} << (i - 64));
  }
  void reset(int i) {
    if (i < 64) w0 &= ~(std::uint64_t{1} << i);
    else w1 &= ~(std::uint64_t{1} << (i - 64));
  }
  bool test(int i) const {
    if (i < 64) return (w0 >> i) & 1;
    return (w1 >> (i - 64)) & 1;
  }
  int count() const { return std::popcount(w0) + std::popcount(w1); }
  bool empty() const { return w0 == 0 && w1 == 0; }
  bool operator==(const Bits&) const = default;

  Bits operator&(const Bits& o) const { return {w0 & o.w0, w1 & o.w1}; }
  Bits operator|(const Bits& o) const { return {w0 | o.w0, w1 | o.w1}; }
  Bits operator^(const Bits& o) const { return {w0 ^ o.w0, w1 ^ o.w1}; }
  Bits minus(const Bits& o) const { return {w0 & ~o.w0, w1 & ~o.w1}; }
  bool subset_of(const Bits& o) const {
    return (w0 & ~o.w0) == 0 && (w1 & ~o.w1) == 0;
  }

  // Lowest set bit, or -1 if empty.
  int first() const {
    if (w0) return std::countr_zero(w0);
    if (w1) return 64 + std::countr_zero(w1);
    return -1;
  }

  template <class F>
  void for_each(F&& f) const {
    std::uint64_t a = w0;
    while (a) {
      f(std::countr_zero(a));
      a &= a - 1;
    }
    a = w1;
    while (a) {
      f(64 + std::countr_zero(a));
      a &= a - 1;
    }
  }

  static Bits full(int n) {
    Bits b;
    if (n >= 64) {
      b.w0 = ~std::uint64_t{0};
      b.w1 = (n == 128) ? ~std::uint64_t{0} : ((std::uint64_t{1} << (n - 64)) - 1);
    } else {
      b.w0 = (n == 64) ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1);
    }
    return b;
  }
};

struct BitsHash {
  std::size_t operator()(const Bits& b) const {
    std::uint64_t h = b.w0 * 0x9e3779b97f4a7c15ULL;
    h ^= b.w1 + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return static_cast<std::size_t>(h);
  }
};

}  // namespace stellar
