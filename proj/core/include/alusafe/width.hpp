#pragma once

#include <cstdint>

#include "alusafe/errors.hpp"

namespace alusafe {

// Bit width of a machine word, 1..32. All operator arithmetic is mod 2^bits.
class Width {
 public:
  static constexpr int kMax = 32;

  explicit Width(int bits) : bits_(bits) {
    if (bits < 1 || bits > kMax)
      throw usage_error("width must be between 1 and 32, got " + std::to_string(bits));
  }

  int bits() const { return bits_; }
  uint32_t mask() const {
    return bits_ == 32 ? 0xFFFFFFFFu : ((uint32_t{1} << bits_) - 1);
  }
  uint64_t domain_size() const { return uint64_t{1} << bits_; }
  // Number of odd values in [0, 2^bits): 2^(bits-1).
  uint64_t odd_count() const { return uint64_t{1} << (bits_ - 1); }

  bool contains(uint32_t v) const { return v <= mask(); }

  friend bool operator==(Width a, Width b) { return a.bits_ == b.bits_; }
  friend bool operator!=(Width a, Width b) { return a.bits_ != b.bits_; }

 private:
  int bits_;
};

inline bool is_odd(uint32_t v) { return (v & 1u) != 0; }
inline bool is_even(uint32_t v) { return (v & 1u) == 0; }

// Multiplicative inverse of an odd value mod 2^w (Hensel lifting).
uint32_t odd_inverse(uint32_t n, Width w);

}  // namespace alusafe
