#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

namespace hecke {

// Smallest-prime-factor table for 1 <= n <= limit (spf[1] = 1).
class FactorSieve {
 public:
  explicit FactorSieve(std::uint32_t limit);

  [[nodiscard]] std::uint32_t limit() const { return limit_; }
  [[nodiscard]] std::uint32_t spf(std::uint32_t n) const;
  [[nodiscard]] bool is_prime(std::uint32_t n) const { return n >= 2 && spf(n) == n; }
  [[nodiscard]] const std::vector<std::uint32_t>& primes() const { return primes_; }

  // (prime, exponent) pairs in increasing prime order.
  [[nodiscard]] std::vector<std::pair<std::uint32_t, unsigned>> factorize(std::uint32_t n) const;

  [[nodiscard]] int mobius(std::uint32_t n) const;
  [[nodiscard]] std::uint64_t euler_phi(std::uint32_t n) const;
  [[nodiscard]] std::uint32_t divisor_count(std::uint32_t n) const;

  // Dense d_2(n) for 0 <= n <= limit (entry 0 unused), in one linear pass.
  [[nodiscard]] std::vector<std::uint32_t> divisor_counts() const;

 private:
  void check_range(std::uint32_t n) const;

  std::uint32_t limit_;
  std::vector<std::uint32_t> spf_;
  std::vector<std::uint32_t> primes_;
};

// Linear sieve; N >= 2.
FactorSieve build_sieve(std::uint32_t limit);

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b);

// c_q(h) = mu(q/g) phi(q) / phi(q/g) with g = gcd(q, h); c_q(0) = phi(q).
// Factors q by trial division.
std::int64_t ramanujan_sum(std::uint64_t q, std::uint64_t h);
// Same closed form with mu/phi looked up from the sieve (q <= sieve.limit()).
std::int64_t ramanujan_sum(const FactorSieve& sieve, std::uint32_t q, std::uint64_t h);

// sum_{1<=a<=q, (a,q)=1} cos(2 pi a h / q), evaluated term by term. Oracle only; q <= 10^4.
double ramanujan_sum_bruteforce(std::uint64_t q, std::uint64_t h);

}  // namespace hecke
