#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace hecke {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

// Deterministic Miller-Rabin for all 64-bit inputs.
bool is_prime_u64(u64 n);

u64 pow_mod(u64 base, u64 exp, u64 mod);

// Montgomery arithmetic for an odd modulus below 2^63. Values passed to
// mul() must already be in Montgomery form (see to_mont/from_mont).
class Montgomery {
 public:
  explicit Montgomery(u64 modulus);

  [[nodiscard]] u64 modulus() const { return mod_; }
  [[nodiscard]] u64 to_mont(u64 x) const { return reduce(static_cast<u128>(x % mod_) * r2_); }
  [[nodiscard]] u64 from_mont(u64 x) const { return reduce(x); }
  [[nodiscard]] u64 mul(u64 a, u64 b) const { return reduce(static_cast<u128>(a) * b); }
  [[nodiscard]] u64 add(u64 a, u64 b) const {
    const u64 s = a + b;
    return s >= mod_ ? s - mod_ : s;
  }
  [[nodiscard]] u64 sub(u64 a, u64 b) const { return a >= b ? a - b : a + mod_ - b; }
  [[nodiscard]] u64 one() const { return one_; }

 private:
  [[nodiscard]] u64 reduce(u128 t) const {
    const u64 m = static_cast<u64>(t) * neg_inv_;
    const u64 r = static_cast<u64>((t + static_cast<u128>(m) * mod_) >> 64);
    return r >= mod_ ? r - mod_ : r;
  }

  u64 mod_;
  u64 neg_inv_;  // -mod^{-1} mod 2^64
  u64 r2_;       // 2^128 mod mod
  u64 one_;      // 2^64 mod mod
};

// A prime p = c * 2^k + 1 with a primitive root, usable for power-of-two
// transforms of length up to 2^k.
struct NttPrime {
  u64 modulus = 0;
  unsigned two_adicity = 0;
  u64 primitive_root = 0;
};

// The i-th NTT-friendly prime of the form c * 2^32 + 1 below 2^63, scanning
// c downwards. The list is generated on first use and shared afterwards.
const NttPrime& ntt_prime(std::size_t index);

NttPrime describe_ntt_prime(u64 modulus);

// Distinct NTT primes whose product bounds reconstructed coefficients.
struct PrimeBasis {
  std::vector<u64> primes;
  double capacity_bits = 0.0;  // log2 of the product of primes

  // Smallest prefix of the NTT prime list whose product exceeds
  // 2^(magnitude_bits + 1), i.e. enough for signed values with
  // |x| < 2^magnitude_bits.
  static PrimeBasis for_magnitude_bits(double magnitude_bits);
  static PrimeBasis first(std::size_t count);

  [[nodiscard]] bool holds_magnitude_bits(double magnitude_bits) const {
    return capacity_bits > magnitude_bits + 1.0;
  }
};

// In-place cyclic transform of length data.size() (a power of two) using
// Montgomery-form values. forward() leaves the output in bit-reversed order;
// inverse() accepts that order and restores natural order, including the
// 1/n scaling.
class NttPlan {
 public:
  NttPlan(u64 modulus, std::size_t length);

  void forward(std::span<u64> data) const;
  void inverse(std::span<u64> data) const;
  [[nodiscard]] const Montgomery& field() const { return mont_; }
  [[nodiscard]] std::size_t length() const { return length_; }

 private:
  Montgomery mont_;
  std::size_t length_;
  std::vector<u64> roots_;      // per-stage twiddles, Montgomery form
  std::vector<u64> inv_roots_;
  u64 inv_length_;
};

}  // namespace hecke
