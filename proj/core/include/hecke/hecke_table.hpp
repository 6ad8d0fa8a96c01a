#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "hecke/arith.hpp"
#include "hecke/series.hpp"

namespace hecke {

// Normalized eigenvalues lambda(n) = c_n / n^{(k-1)/2} for 1 <= n <= limit.
// values[0] is unused and held at 0 so that values[n] is lambda(n).
struct EigenvalueTable {
  int weight = 12;
  std::size_t limit = 0;
  std::vector<double> values;
  std::string source;

  [[nodiscard]] double operator[](std::size_t n) const { return values[n]; }
  [[nodiscard]] double lambda(std::size_t n) const;  // range-checked
};

struct SatakeAngle {
  std::uint64_t prime = 0;
  double angle = 0.0;  // theta_p in [0, pi]
};

// lambda(n^2) for 1 <= n <= limit, values[0] unused.
struct SquareTable {
  std::size_t limit = 0;
  std::vector<double> values;

  [[nodiscard]] double operator[](std::size_t n) const { return values[n]; }
};

EigenvalueTable normalize(const FourierExpansion& expansion);

// lambda(p^m) from lambda(p) via lambda(p^{j+1}) = lambda(p) lambda(p^j) - lambda(p^{j-1}).
// lambda_p is clamped to [-2, 2].
double lambda_prime_power(double lambda_p, int m);

// Rebuilds lambda(n), n <= N, multiplicatively from lambda at primes.
EigenvalueTable sieve_lambda(const std::map<std::uint64_t, double>& prime_values, std::size_t limit,
                             int weight = 12);

std::map<std::uint64_t, double> prime_values(const EigenvalueTable& table, const FactorSieve& sieve);

SquareTable square_table(const EigenvalueTable& table, std::size_t limit);

// max_n |sum_{d|n} lambda(d^2) - lambda(n)^2| over n <= min(limit, square.limit).
struct DivisorSumReport {
  double max_deviation = 0.0;
  std::size_t witness = 1;
};
DivisorSumReport divisor_sum_check(const EigenvalueTable& table, const SquareTable& square);

// theta_p = arccos(clamp(lambda_p / 2)). Throws DeligneViolation if
// |lambda_p| > 2 + 1e-6.
SatakeAngle satake_angle(double lambda_p, std::uint64_t prime = 0);

struct DeligneReport {
  double max_ratio = 0.0;  // max |lambda(n)| / d_2(n)
  std::size_t argmax = 1;
  bool holds = true;       // max_ratio <= 1 + 1e-9
};
DeligneReport deligne_report(const EigenvalueTable& table, const FactorSieve& sieve);

// |lambda(m) lambda(n) - sum_{d | (m,n)} lambda(mn / d^2)|; requires mn <= N.
double hecke_relation_check(const EigenvalueTable& table, std::uint64_t m, std::uint64_t n);

// Exhaustive scan of the relations that generate all of the Hecke identities:
// lambda(n) = lambda(p^e) lambda(n / p^e) for p = spf(n), and the prime-power
// recurrence. Returns the first n whose residual exceeds tol * d_2(n), or 0.
struct MultiplicativityReport {
  double max_residual = 0.0;
  std::size_t witness = 0;  // 0 when nothing exceeded tolerance
};
MultiplicativityReport multiplicativity_check(const EigenvalueTable& table, const FactorSieve& sieve,
                                              double tol = 1e-9);

// sum_{p<=X} lambda(p)^2 / p - sum_{p<=X} 1 / p.
double prime_sum_normalization(const EigenvalueTable& table, const FactorSieve& sieve, std::size_t x);

// Cache layout: "HECKELT1", u32 weight, u64 N, then N little-endian doubles
// lambda(1..N). Reading re-validates lambda(1) = 1 and the p = 2, 3
// prime-power recurrences.
inline constexpr char kTableCacheMagic[8] = {'H', 'E', 'C', 'K', 'E', 'L', 'T', '1'};
void write_table_cache(std::ostream& out, const EigenvalueTable& table);
void write_table_cache(const std::filesystem::path& path, const EigenvalueTable& table);
EigenvalueTable read_table_cache(std::istream& in);
EigenvalueTable read_table_cache(const std::filesystem::path& path);

}  // namespace hecke
