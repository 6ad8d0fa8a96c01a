#pragma once

// Slow, obviously-correct reference implementations. Nothing here calls into
// the library code paths being checked.

#include <gmpxx.h>

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <vector>

#include "hecke/hecke_table.hpp"

namespace oracle {

inline std::vector<std::uint64_t> schoolbook_mod(const std::vector<std::uint64_t>& a,
                                                 const std::vector<std::uint64_t>& b, std::uint64_t p,
                                                 std::size_t out_len) {
  std::vector<std::uint64_t> c(out_len, 0);
  for (std::size_t i = 0; i < a.size() && i < out_len; ++i) {
    for (std::size_t j = 0; j < b.size() && i + j < out_len; ++j) {
      const auto t = static_cast<unsigned __int128>(a[i]) * b[j] % p;
      c[i + j] = static_cast<std::uint64_t>((c[i + j] + t) % p);
    }
  }
  return c;
}

inline std::vector<mpz_class> schoolbook(const std::vector<mpz_class>& a, const std::vector<mpz_class>& b,
                                         std::size_t out_len) {
  std::vector<mpz_class> c(out_len, 0);
  for (std::size_t i = 0; i < a.size() && i < out_len; ++i) {
    for (std::size_t j = 0; j < b.size() && i + j < out_len; ++j) c[i + j] += a[i] * b[j];
  }
  return c;
}

// prod_{n=1}^{N} (1 - q^n)^power, truncated at degree N, one factor at a time.
inline std::vector<mpz_class> eta_power(std::size_t degree, unsigned power) {
  std::vector<mpz_class> c(degree + 1, 0);
  c[0] = 1;
  for (std::size_t n = 1; n <= degree; ++n) {
    for (unsigned r = 0; r < power; ++r) {
      for (std::size_t k = degree; k >= n; --k) c[k] -= c[k - n];
    }
  }
  return c;
}

// q prod (1 - q^n)^24.
inline std::vector<mpz_class> delta(std::size_t degree) {
  const auto e = eta_power(degree, 24);
  std::vector<mpz_class> d(degree + 1, 0);
  for (std::size_t k = 1; k <= degree; ++k) d[k] = e[k - 1];
  return d;
}

inline mpz_class sigma(unsigned power, std::uint64_t n) {
  mpz_class s = 0;
  for (std::uint64_t d = 1; d <= n; ++d) {
    if (n % d == 0) {
      mpz_class t;
      mpz_ui_pow_ui(t.get_mpz_t(), d, power);
      s += t;
    }
  }
  return s;
}

inline std::uint32_t trial_spf(std::uint32_t n) {
  for (std::uint32_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return d;
  }
  return n;
}

inline std::uint64_t gcd(std::uint64_t a, std::uint64_t b) {
  while (b) {
    a %= b;
    std::swap(a, b);
  }
  return a;
}

inline std::uint32_t divisor_count(std::uint32_t n) {
  std::uint32_t c = 0;
  for (std::uint32_t d = 1; d <= n; ++d) c += n % d == 0;
  return c;
}

inline std::uint64_t euler_phi(std::uint32_t n) {
  std::uint64_t c = 0;
  for (std::uint32_t a = 1; a <= n; ++a) c += gcd(a, n) == 1;
  return c;
}

inline int mobius(std::uint32_t n) {
  int sign = 1;
  for (std::uint32_t p = 2; p <= n; ++p) {
    if (n % p) continue;
    n /= p;
    if (n % p == 0) return 0;
    sign = -sign;
  }
  return sign;
}

inline double shifted_sum(const hecke::EigenvalueTable& t, std::size_t x, std::uint64_t h) {
  long double s = 0;
  for (std::size_t n = x; n <= 2 * x; ++n) {
    const long double a = t.values[n];
    const long double b = t.values[n + h];
    s += a * a * b * b;
  }
  return static_cast<double>(s);
}

inline std::complex<long double> exp_sum_sq(const hecke::EigenvalueTable& t, long double alpha, std::size_t x) {
  std::complex<long double> s = 0;
  for (std::size_t n = x; n <= 2 * x; ++n) {
    const long double th = 2 * std::numbers::pi_v<long double> * std::fmod(alpha * n, 1.0L);
    const long double v = static_cast<long double>(t.values[n]) * t.values[n];
    s += std::complex<long double>(v * std::cos(th), v * std::sin(th));
  }
  return s;
}

}  // namespace oracle
