#include "hecke/hecke_table.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <string>

#include "hecke/error.hpp"
#include "hecke/le_io.hpp"
#include "hecke/summation.hpp"

namespace hecke {

namespace {

std::uint32_t sieve_limit(std::size_t n) {
  if (n > 0xffff'fffeULL) throw InputError("table limit exceeds 32-bit sieve range");
  return static_cast<std::uint32_t>(std::max<std::size_t>(n, 2));
}

// Largest power of spf(n) dividing n.
std::pair<std::uint32_t, unsigned> spf_power(const FactorSieve& sieve, std::uint32_t n) {
  const std::uint32_t p = sieve.spf(n);
  std::uint32_t pk = 1;
  unsigned e = 0;
  while (n % p == 0) {
    n /= p;
    pk *= p;
    ++e;
  }
  return {pk, e};
}

}  // namespace

double EigenvalueTable::lambda(std::size_t n) const {
  if (n < 1 || n > limit) {
    throw InputError("lambda(" + std::to_string(n) + ") outside table range [1, " + std::to_string(limit) + "]");
  }
  return values[n];
}

EigenvalueTable normalize(const FourierExpansion& expansion) {
  if (!is_supported_weight(expansion.weight)) {
    throw InputError("normalize: unsupported weight " + std::to_string(expansion.weight));
  }
  if (expansion.limit() < 1 || expansion[1] != 1) {
    throw InputError("normalize: expansion must have c_1 = 1");
  }
  EigenvalueTable t;
  t.weight = expansion.weight;
  t.limit = expansion.limit();
  t.values.assign(t.limit + 1, 0.0);
  t.source = "q-expansion weight " + std::to_string(expansion.weight) + " to degree " + std::to_string(t.limit);
  const double half_weight = 0.5 * (expansion.weight - 1);
  for (std::size_t n = 1; n <= t.limit; ++n) {
    const mpz_class& c = expansion[n];
    if (sgn(c) == 0) continue;
    long exponent = 0;
    const double mantissa = mpz_get_d_2exp(&exponent, c.get_mpz_t());
    t.values[n] = std::ldexp(mantissa / std::pow(static_cast<double>(n), half_weight), static_cast<int>(exponent));
  }
  t.values[1] = 1.0;
  return t;
}

double lambda_prime_power(double lambda_p, int m) {
  if (m < 0) throw InputError("lambda_prime_power: negative exponent");
  const double x = std::clamp(lambda_p, -2.0, 2.0);
  double prev = 1.0;  // lambda(p^0)
  if (m == 0) return prev;
  double cur = x;
  for (int j = 1; j < m; ++j) {
    const double next = x * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

std::map<std::uint64_t, double> prime_values(const EigenvalueTable& table, const FactorSieve& sieve) {
  std::map<std::uint64_t, double> out;
  for (std::uint32_t p : sieve.primes()) {
    if (p > table.limit) break;
    out.emplace(p, table.values[p]);
  }
  return out;
}

EigenvalueTable sieve_lambda(const std::map<std::uint64_t, double>& primes, std::size_t limit, int weight) {
  if (limit < 1) throw InputError("sieve_lambda requires N >= 1");
  EigenvalueTable t;
  t.weight = weight;
  t.limit = limit;
  t.values.assign(limit + 1, 0.0);
  t.values[1] = 1.0;
  t.source = "multiplicative sieve from prime eigenvalues";
  if (limit == 1) return t;

  const FactorSieve sieve(sieve_limit(limit));
  for (std::uint32_t n = 2; n <= limit; ++n) {
    const std::uint32_t p = sieve.spf(n);
    const auto [pk, e] = spf_power(sieve, n);
    if (pk != n) {
      t.values[n] = t.values[pk] * t.values[n / pk];
    } else if (e == 1) {
      const auto it = primes.find(p);
      if (it == primes.end()) throw InputError("sieve_lambda: missing lambda(" + std::to_string(p) + ")");
      t.values[n] = it->second;
    } else {
      t.values[n] = t.values[p] * t.values[n / p] - t.values[n / p / p];
    }
  }
  return t;
}

SquareTable square_table(const EigenvalueTable& table, std::size_t limit) {
  if (limit > table.limit) {
    throw InputError("square_table: N = " + std::to_string(limit) + " exceeds prime coverage " +
                     std::to_string(table.limit));
  }
  SquareTable sq;
  sq.limit = limit;
  sq.values.assign(limit + 1, 0.0);
  if (limit >= 1) sq.values[1] = 1.0;
  if (limit < 2) return sq;
  const FactorSieve sieve(sieve_limit(limit));
  for (std::uint32_t n = 2; n <= limit; ++n) {
    const std::uint32_t p = sieve.spf(n);
    const auto [pk, e] = spf_power(sieve, n);
    sq.values[n] = lambda_prime_power(table.values[p], 2 * static_cast<int>(e)) * sq.values[n / pk];
  }
  return sq;
}

DivisorSumReport divisor_sum_check(const EigenvalueTable& table, const SquareTable& square) {
  const std::size_t n_max = std::min(table.limit, square.limit);
  std::vector<double> acc(n_max + 1, 0.0);
  for (std::size_t d = 1; d <= n_max; ++d) {
    for (std::size_t m = d; m <= n_max; m += d) acc[m] += square.values[d];
  }
  DivisorSumReport r;
  for (std::size_t n = 1; n <= n_max; ++n) {
    const double dev = std::abs(acc[n] - table.values[n] * table.values[n]);
    if (dev > r.max_deviation) {
      r.max_deviation = dev;
      r.witness = n;
    }
  }
  return r;
}

SatakeAngle satake_angle(double lambda_p, std::uint64_t prime) {
  if (!(std::abs(lambda_p) <= 2.0 + 1e-6)) {
    throw DeligneViolation("|lambda(" + std::to_string(prime) + ")| = " + std::to_string(std::abs(lambda_p)) +
                           " exceeds 2");
  }
  return {prime, std::acos(std::clamp(lambda_p / 2.0, -1.0, 1.0))};
}

DeligneReport deligne_report(const EigenvalueTable& table, const FactorSieve& sieve) {
  if (sieve.limit() < table.limit) throw InputError("deligne_report: sieve shorter than table");
  const auto d2 = sieve.divisor_counts();
  DeligneReport r;
  for (std::size_t n = 1; n <= table.limit; ++n) {
    const double ratio = std::abs(table.values[n]) / d2[n];
    if (ratio > r.max_ratio || !std::isfinite(ratio)) {
      r.max_ratio = ratio;
      r.argmax = n;
    }
  }
  r.holds = r.max_ratio <= 1.0 + 1e-9;
  return r;
}

double hecke_relation_check(const EigenvalueTable& table, std::uint64_t m, std::uint64_t n) {
  if (m < 1 || n < 1) throw InputError("hecke_relation_check requires m, n >= 1");
  if (m > table.limit || n > table.limit / m) {
    throw InputError("hecke_relation_check: mn exceeds table limit " + std::to_string(table.limit));
  }
  const std::uint64_t g = gcd_u64(m, n);
  const std::uint64_t mn = m * n;
  double rhs = 0.0;
  for (std::uint64_t d = 1; d <= g; ++d) {
    if (g % d == 0) rhs += table.values[mn / (d * d)];
  }
  return std::abs(table.values[m] * table.values[n] - rhs);
}

MultiplicativityReport multiplicativity_check(const EigenvalueTable& table, const FactorSieve& sieve,
                                              double tol) {
  if (sieve.limit() < table.limit) throw InputError("multiplicativity_check: sieve shorter than table");
  MultiplicativityReport r;
  const auto d2 = sieve.divisor_counts();
  for (std::uint32_t n = 2; n <= table.limit; ++n) {
    const std::uint32_t p = sieve.spf(n);
    const auto [pk, e] = spf_power(sieve, n);
    double expected;
    if (pk != n) {
      expected = table.values[pk] * table.values[n / pk];
    } else if (e >= 2) {
      expected = table.values[p] * table.values[n / p] - table.values[n / p / p];
    } else {
      continue;
    }
    const double residual = std::abs(table.values[n] - expected);
    if (!(residual <= tol * d2[n]) && r.witness == 0) r.witness = n;
    if (residual > r.max_residual || !std::isfinite(residual)) r.max_residual = residual;
  }
  return r;
}

double prime_sum_normalization(const EigenvalueTable& table, const FactorSieve& sieve, std::size_t x) {
  if (x > table.limit || x > sieve.limit()) throw InputError("prime_sum_normalization: X beyond table");
  CompensatedSum acc;
  for (std::uint32_t p : sieve.primes()) {
    if (p > x) break;
    acc.add((table.values[p] * table.values[p] - 1.0) / p);
  }
  return acc.value();
}

void write_table_cache(std::ostream& out, const EigenvalueTable& table) {
  out.write(kTableCacheMagic, sizeof kTableCacheMagic);
  le::put_u32(out, static_cast<std::uint32_t>(table.weight));
  le::put_u64(out, table.limit);
  for (std::size_t n = 1; n <= table.limit; ++n) le::put_f64(out, table.values[n]);
  if (!out) throw CacheError("failed writing eigenvalue table cache");
}

void write_table_cache(const std::filesystem::path& path, const EigenvalueTable& table) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw CacheError("cannot open " + path.string() + " for writing");
  write_table_cache(out, table);
}

EigenvalueTable read_table_cache(std::istream& in) {
  char magic[8];
  if (!in.read(magic, sizeof magic) || std::memcmp(magic, kTableCacheMagic, sizeof magic) != 0) {
    throw CacheError("not a HECKELT1 eigenvalue cache");
  }
  EigenvalueTable t;
  t.weight = static_cast<int>(le::get_u32(in));
  t.limit = le::get_u64(in);
  if (!in) throw CacheError("truncated eigenvalue cache header");
  if (!is_supported_weight(t.weight)) throw CacheError("eigenvalue cache has unsupported weight");
  t.values.assign(t.limit + 1, 0.0);
  for (std::size_t n = 1; n <= t.limit; ++n) t.values[n] = le::get_f64(in);
  if (!in) throw CacheError("eigenvalue cache truncated");
  if (in.peek() != std::char_traits<char>::eof()) throw CacheError("trailing bytes after eigenvalue cache");
  t.source = "eigenvalue cache";

  if (t.limit >= 1 && t.values[1] != 1.0) throw CacheError("eigenvalue cache: lambda(1) != 1");
  for (std::size_t p : {2, 3}) {
    std::size_t prev = 1;
    std::size_t cur = p;
    for (unsigned k = 1; cur <= t.limit / p; ++k) {
      const std::size_t next = cur * p;
      const double expected = t.values[p] * t.values[cur] - t.values[prev];
      if (!(std::abs(t.values[next] - expected) <= 1e-9 * (k + 2))) {
        throw CacheError("eigenvalue cache fails the prime-power recurrence at " + std::to_string(p) + "^" +
                         std::to_string(k + 1));
      }
      prev = cur;
      cur = next;
    }
  }
  return t;
}

EigenvalueTable read_table_cache(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CacheError("cannot open " + path.string());
  return read_table_cache(in);
}

}  // namespace hecke
