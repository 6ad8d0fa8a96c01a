#include "hecke/arith.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "hecke/error.hpp"

namespace hecke {

FactorSieve::FactorSieve(std::uint32_t limit) : limit_(limit), spf_(std::size_t{limit} + 1, 0) {
  if (limit < 2) throw InputError("factor sieve requires N >= 2");
  spf_[1] = 1;
  for (std::uint32_t i = 2; i <= limit; ++i) {
    if (spf_[i] == 0) {
      spf_[i] = i;
      primes_.push_back(i);
    }
    for (std::uint32_t p : primes_) {
      const std::uint64_t m = std::uint64_t{p} * i;
      if (p > spf_[i] || m > limit) break;
      spf_[m] = p;
    }
  }
}

FactorSieve build_sieve(std::uint32_t limit) { return FactorSieve(limit); }

void FactorSieve::check_range(std::uint32_t n) const {
  if (n < 1 || n > limit_) {
    throw InputError(std::to_string(n) + " is outside the sieve range [1, " + std::to_string(limit_) + "]");
  }
}

std::uint32_t FactorSieve::spf(std::uint32_t n) const {
  check_range(n);
  return spf_[n];
}

std::vector<std::pair<std::uint32_t, unsigned>> FactorSieve::factorize(std::uint32_t n) const {
  check_range(n);
  std::vector<std::pair<std::uint32_t, unsigned>> out;
  while (n > 1) {
    const std::uint32_t p = spf_[n];
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  return out;
}

int FactorSieve::mobius(std::uint32_t n) const {
  int mu = 1;
  for (const auto& [p, e] : factorize(n)) {
    if (e > 1) return 0;
    mu = -mu;
  }
  return mu;
}

std::uint64_t FactorSieve::euler_phi(std::uint32_t n) const {
  std::uint64_t phi = 1;
  for (const auto& [p, e] : factorize(n)) {
    phi *= p - 1;
    for (unsigned i = 1; i < e; ++i) phi *= p;
  }
  return phi;
}

std::uint32_t FactorSieve::divisor_count(std::uint32_t n) const {
  std::uint32_t d = 1;
  for (const auto& [p, e] : factorize(n)) d *= e + 1;
  return d;
}

std::vector<std::uint32_t> FactorSieve::divisor_counts() const {
  // d(n) = d(m) (e+1) where n = p^e m, p = spf(n); exponent of spf tracked alongside.
  std::vector<std::uint32_t> d(std::size_t{limit_} + 1, 0);
  std::vector<std::uint8_t> e(std::size_t{limit_} + 1, 0);
  std::vector<std::uint32_t> rest(std::size_t{limit_} + 1, 1);
  d[1] = 1;
  for (std::uint32_t n = 2; n <= limit_; ++n) {
    const std::uint32_t p = spf_[n];
    const std::uint32_t m = n / p;
    if (m > 1 && spf_[m] == p) {
      e[n] = static_cast<std::uint8_t>(e[m] + 1);
      rest[n] = rest[m];
    } else {
      e[n] = 1;
      rest[n] = m;
    }
    d[n] = d[rest[n]] * (e[n] + 1u);
  }
  return d;
}

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) {
  while (b != 0) {
    const std::uint64_t t = a % b;
    a = b;
    b = t;
  }
  return a;
}

namespace {

struct MuPhi {
  int mu;
  std::uint64_t phi;
};

MuPhi mu_phi_trial(std::uint64_t n) {
  MuPhi out{1, 1};
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.mu = e > 1 ? 0 : -out.mu;
    out.phi *= p - 1;
    for (unsigned i = 1; i < e; ++i) out.phi *= p;
  }
  if (n > 1) {
    out.mu = -out.mu;
    out.phi *= n - 1;
  }
  return out;
}

}  // namespace

std::int64_t ramanujan_sum(std::uint64_t q, std::uint64_t h) {
  if (q == 0) throw InputError("ramanujan_sum requires q >= 1");
  const std::uint64_t g = h == 0 ? q : gcd_u64(q, h);
  const MuPhi outer = mu_phi_trial(q / g);
  if (outer.mu == 0) return 0;
  const MuPhi whole = mu_phi_trial(q);
  return outer.mu * static_cast<std::int64_t>(whole.phi / outer.phi);
}

std::int64_t ramanujan_sum(const FactorSieve& sieve, std::uint32_t q, std::uint64_t h) {
  const std::uint32_t g = h == 0 ? q : static_cast<std::uint32_t>(gcd_u64(q, h));
  const std::uint32_t r = q / g;
  const int mu = sieve.mobius(r);
  if (mu == 0) return 0;
  return mu * static_cast<std::int64_t>(sieve.euler_phi(q) / sieve.euler_phi(r));
}

double ramanujan_sum_bruteforce(std::uint64_t q, std::uint64_t h) {
  if (q == 0 || q > 10'000) throw InputError("ramanujan_sum_bruteforce requires 1 <= q <= 10^4");
  double sum = 0.0;
  const std::uint64_t hr = h % q;
  for (std::uint64_t a = 1; a <= q; ++a) {
    if (gcd_u64(a, q) != 1) continue;
    sum += std::cos(2.0 * std::numbers::pi * static_cast<double>(a * hr % q) / static_cast<double>(q));
  }
  return sum;
}

}  // namespace hecke
