#include "hecke/modular.hpp"

#include <bit>
#include <cmath>
#include <mutex>
#include <string>

#include "hecke/error.hpp"

namespace hecke {

namespace {

u64 mul_mod(u64 a, u64 b, u64 mod) { return static_cast<u64>(static_cast<u128>(a) * b % mod); }

std::vector<u64> distinct_prime_factors(u64 n) {
  std::vector<u64> out;
  for (u64 d = 2; d * d <= n; ++d) {
    if (n % d != 0) continue;
    out.push_back(d);
    while (n % d == 0) n /= d;
  }
  if (n > 1) out.push_back(n);
  return out;
}

constexpr unsigned kPrimeShift = 32;
constexpr u64 kMaxMultiplier = (u64{1} << 31) - 1;

}  // namespace

u64 pow_mod(u64 base, u64 exp, u64 mod) {
  u64 result = 1 % mod;
  base %= mod;
  while (exp > 0) {
    if (exp & 1) result = mul_mod(result, base, mod);
    base = mul_mod(base, base, mod);
    exp >>= 1;
  }
  return result;
}

bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    u64 x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

Montgomery::Montgomery(u64 modulus) : mod_(modulus) {
  if (modulus % 2 == 0 || modulus >= (u64{1} << 63)) {
    throw ConfigurationError("Montgomery modulus must be odd and below 2^63, got " +
                             std::to_string(modulus));
  }
  u64 inv = modulus;  // Newton iteration for modulus^{-1} mod 2^64
  for (int i = 0; i < 6; ++i) inv *= 2 - modulus * inv;
  neg_inv_ = ~inv + 1;
  one_ = static_cast<u64>((static_cast<u128>(1) << 64) % modulus);
  r2_ = mul_mod(one_, one_, modulus);
}

NttPrime describe_ntt_prime(u64 modulus) {
  if (!is_prime_u64(modulus)) {
    throw ConfigurationError("NTT modulus " + std::to_string(modulus) + " is not prime");
  }
  NttPrime out;
  out.modulus = modulus;
  out.two_adicity = static_cast<unsigned>(std::countr_zero(modulus - 1));
  const auto factors = distinct_prime_factors(modulus - 1);
  for (u64 g = 2;; ++g) {
    bool generator = true;
    for (u64 r : factors) {
      if (pow_mod(g, (modulus - 1) / r, modulus) == 1) {
        generator = false;
        break;
      }
    }
    if (generator) {
      out.primitive_root = g;
      return out;
    }
  }
}

const NttPrime& ntt_prime(std::size_t index) {
  static std::mutex mutex;
  static std::vector<NttPrime> primes;
  static u64 next_multiplier = kMaxMultiplier;

  std::lock_guard lock(mutex);
  while (primes.size() <= index) {
    if (next_multiplier == 0) throw ConfigurationError("ran out of NTT-friendly primes");
    const u64 candidate = (next_multiplier << kPrimeShift) + 1;
    --next_multiplier;
    if (is_prime_u64(candidate)) primes.push_back(describe_ntt_prime(candidate));
  }
  return primes[index];
}

PrimeBasis PrimeBasis::first(std::size_t count) {
  PrimeBasis basis;
  for (std::size_t i = 0; i < count; ++i) {
    const u64 p = ntt_prime(i).modulus;
    basis.primes.push_back(p);
    basis.capacity_bits += std::log2(static_cast<double>(p));
  }
  return basis;
}

PrimeBasis PrimeBasis::for_magnitude_bits(double magnitude_bits) {
  PrimeBasis basis;
  while (!basis.holds_magnitude_bits(magnitude_bits)) {
    const u64 p = ntt_prime(basis.primes.size()).modulus;
    basis.primes.push_back(p);
    basis.capacity_bits += std::log2(static_cast<double>(p));
  }
  return basis;
}

NttPlan::NttPlan(u64 modulus, std::size_t length) : mont_(modulus), length_(length) {
  if (length == 0 || !std::has_single_bit(length)) {
    throw ConfigurationError("NTT length must be a power of two, got " + std::to_string(length));
  }
  const NttPrime prime = describe_ntt_prime(modulus);
  const unsigned log_len = static_cast<unsigned>(std::countr_zero(length));
  if (log_len > prime.two_adicity) {
    throw ConfigurationError("modulus " + std::to_string(modulus) + " supports transforms up to 2^" +
                             std::to_string(prime.two_adicity) + ", need 2^" + std::to_string(log_len));
  }

  roots_.assign(std::max<std::size_t>(length, 2), 0);
  inv_roots_.assign(roots_.size(), 0);
  for (std::size_t half = 1; half < length; half <<= 1) {
    const u64 w = pow_mod(prime.primitive_root, (modulus - 1) / (2 * half), modulus);
    const u64 w_mont = mont_.to_mont(w);
    const u64 w_inv_mont = mont_.to_mont(pow_mod(w, modulus - 2, modulus));
    u64 cur = mont_.one();
    u64 cur_inv = mont_.one();
    for (std::size_t j = 0; j < half; ++j) {
      roots_[half + j] = cur;
      inv_roots_[half + j] = cur_inv;
      cur = mont_.mul(cur, w_mont);
      cur_inv = mont_.mul(cur_inv, w_inv_mont);
    }
  }
  inv_length_ = mont_.to_mont(pow_mod(length % modulus, modulus - 2, modulus));
}

void NttPlan::forward(std::span<u64> a) const {
  const std::size_t n = length_;
  for (std::size_t half = n / 2; half >= 1; half >>= 1) {
    const u64* w = roots_.data() + half;
    for (std::size_t i = 0; i < n; i += 2 * half) {
      u64* lo = a.data() + i;
      u64* hi = lo + half;
      for (std::size_t j = 0; j < half; ++j) {
        const u64 u = lo[j];
        const u64 v = hi[j];
        lo[j] = mont_.add(u, v);
        hi[j] = mont_.mul(mont_.sub(u, v), w[j]);
      }
    }
  }
}

void NttPlan::inverse(std::span<u64> a) const {
  const std::size_t n = length_;
  for (std::size_t half = 1; half < n; half <<= 1) {
    const u64* w = inv_roots_.data() + half;
    for (std::size_t i = 0; i < n; i += 2 * half) {
      u64* lo = a.data() + i;
      u64* hi = lo + half;
      for (std::size_t j = 0; j < half; ++j) {
        const u64 u = lo[j];
        const u64 v = mont_.mul(hi[j], w[j]);
        lo[j] = mont_.add(u, v);
        hi[j] = mont_.sub(u, v);
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) a[i] = mont_.mul(a[i], inv_length_);
}

}  // namespace hecke
