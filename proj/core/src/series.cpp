#include "hecke/series.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "hecke/arith.hpp"
#include "hecke/error.hpp"
#include "hecke/int128.hpp"
#include "hecke/parallel.hpp"

namespace hecke {

namespace {

constexpr std::size_t kEisensteinCheckLimit = 10'000;

// Residues of a dense int64 series, lifted into [0, p).
ModSeries reduce_small(std::span<const long long> values, u64 modulus) {
  ModSeries out{modulus, std::vector<u64>(values.size())};
  const auto m = static_cast<long long>(modulus);
  for (std::size_t i = 0; i < values.size(); ++i) {
    long long r = values[i] % m;
    if (r < 0) r += m;
    out.coeffs[i] = static_cast<u64>(r);
  }
  return out;
}

IntSeries reconstruct(const std::vector<ModSeries>& channels, const PrimeBasis& basis,
                      std::size_t length, unsigned threads) {
  IntSeries out(length);
  const CrtReconstructor crt(basis);
  constexpr std::size_t kChunk = 1 << 14;
  const std::size_t chunks = (length + kChunk - 1) / kChunk;
  parallel_for(chunks, threads, [&](std::size_t c) {
    std::vector<u64> residues(channels.size());
    const std::size_t end = std::min(length, (c + 1) * kChunk);
    for (std::size_t n = c * kChunk; n < end; ++n) {
      for (std::size_t i = 0; i < channels.size(); ++i) residues[i] = channels[i].coeffs[n];
      crt.reconstruct(residues, out.coeffs[n]);
    }
  });
  return out;
}

// Exponents (a, b) with 4a + 6b = weight - 12; multiplication order E_4 first.
std::pair<int, int> eisenstein_exponents(int weight) {
  switch (weight) {
    case 12: return {0, 0};
    case 16: return {1, 0};
    case 18: return {0, 1};
    case 20: return {2, 0};
    case 22: return {1, 1};
    case 26: return {2, 1};
    default: throw InputError("unsupported weight " + std::to_string(weight) +
                              "; expected one of 12, 16, 18, 20, 22, 26");
  }
}

// d(n) <= 2 sqrt(n) gives log2 |c_n| <= 1 + (k/2) log2 n for every n <= N.
double closed_form_bits(int weight, std::size_t n) {
  const double log_n = std::log2(static_cast<double>(std::max<std::size_t>(n, 1)));
  return 1.0 + 0.5 * weight * log_n;
}

constexpr std::size_t kDivisorSieveLimit = std::size_t{1} << 31;

}  // namespace

mpz_class to_mpz(i128 value) {
  const bool negative = value < 0;
  const auto mag = negative ? static_cast<unsigned __int128>(0) - static_cast<unsigned __int128>(value)
                            : static_cast<unsigned __int128>(value);
  mpz_class out(static_cast<unsigned long>(mag >> 64));
  out <<= 64;
  out += static_cast<unsigned long>(mag & 0xffff'ffff'ffff'ffffULL);
  if (negative) out = -out;
  return out;
}

std::optional<i128> to_i128(const mpz_class& value) {
  const mpz_srcptr z = value.get_mpz_t();
  const std::size_t bits = mpz_sizeinbase(z, 2);
  const bool negative = sgn(value) < 0;
  if (bits > 128) return std::nullopt;
  const std::size_t limbs = mpz_size(z);
  const auto lo = static_cast<unsigned __int128>(limbs > 0 ? mpz_getlimbn(z, 0) : 0);
  const auto hi = static_cast<unsigned __int128>(limbs > 1 ? mpz_getlimbn(z, 1) : 0);
  const unsigned __int128 magnitude = (hi << 64) | lo;
  if (bits == 128) {
    // Only -2^127 has a 128-bit magnitude and still fits.
    if (!negative || magnitude != static_cast<unsigned __int128>(1) << 127) return std::nullopt;
    return static_cast<i128>(magnitude);
  }
  return negative ? -static_cast<i128>(magnitude) : static_cast<i128>(magnitude);
}

IntSeries::IntSeries(std::vector<mpz_class> c) : coeffs(std::move(c)) {
  if (coeffs.empty()) coeffs.resize(1);
}

IntSeries IntSeries::from_ints(std::span<const long long> values) {
  IntSeries out(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) out.coeffs[i] = static_cast<long>(values[i]);
  return out;
}

std::size_t IntSeries::max_bits() const {
  std::size_t bits = 0;
  for (const auto& c : coeffs) {
    if (sgn(c) != 0) bits = std::max(bits, mpz_sizeinbase(c.get_mpz_t(), 2));
  }
  return bits;
}

bool is_supported_weight(int weight) {
  return std::ranges::find(kSupportedWeights, weight) != std::end(kSupportedWeights);
}

ModSeries reduce_mod(const IntSeries& a, u64 modulus) {
  ModSeries out{modulus, std::vector<u64>(a.length())};
  for (std::size_t i = 0; i < a.length(); ++i) {
    out.coeffs[i] = mpz_fdiv_ui(a.coeffs[i].get_mpz_t(), modulus);
  }
  return out;
}

ModSeries ntt_multiply(const ModSeries& a, const ModSeries& b, std::size_t out_len) {
  if (a.modulus != b.modulus) throw InputError("ntt_multiply: operands use different moduli");
  ModSeries out{a.modulus, std::vector<u64>(out_len, 0)};
  const std::size_t la = std::min(a.length(), out_len);
  const std::size_t lb = std::min(b.length(), out_len);
  if (la == 0 || lb == 0) return out;

  const std::size_t full = la + lb - 1;
  const std::size_t size = std::bit_ceil(full);
  const NttPlan plan(a.modulus, size);
  const Montgomery& f = plan.field();

  std::vector<u64> fa(size, 0);
  for (std::size_t i = 0; i < la; ++i) fa[i] = f.to_mont(a.coeffs[i]);
  plan.forward(fa);
  if (&a == &b && la == lb) {
    for (auto& x : fa) x = f.mul(x, x);
  } else {
    std::vector<u64> fb(size, 0);
    for (std::size_t i = 0; i < lb; ++i) fb[i] = f.to_mont(b.coeffs[i]);
    plan.forward(fb);
    for (std::size_t i = 0; i < size; ++i) fa[i] = f.mul(fa[i], fb[i]);
  }
  plan.inverse(fa);
  const std::size_t keep = std::min(out_len, full);
  for (std::size_t i = 0; i < keep; ++i) out.coeffs[i] = f.from_mont(fa[i]);
  return out;
}

ModSeries ntt_square(const ModSeries& a, std::size_t out_len) { return ntt_multiply(a, a, out_len); }

double product_magnitude_bits(const IntSeries& a, const IntSeries& b, std::size_t out_len) {
  const std::size_t terms = std::min({a.length(), b.length(), out_len});
  if (terms == 0) return 0.0;
  return static_cast<double>(a.max_bits() + b.max_bits()) + std::log2(static_cast<double>(terms));
}

CrtReconstructor::CrtReconstructor(const PrimeBasis& basis) : primes_(basis.primes), modulus_(1) {
  if (primes_.empty()) throw ConfigurationError("empty CRT basis");
  inverse_.resize(primes_.size());
  for (std::size_t i = 0; i < primes_.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      inverse_[i].push_back(pow_mod(primes_[j] % primes_[i], primes_[i] - 2, primes_[i]));
    }
    modulus_ *= static_cast<unsigned long>(primes_[i]);
  }
  half_ = modulus_ / 2;
}

void CrtReconstructor::reconstruct(std::span<const u64> residues, mpz_class& out) const {
  const std::size_t k = primes_.size();
  u64 digits[16];
  std::vector<u64> spill;
  u64* v = digits;
  if (k > 16) {
    spill.resize(k);
    v = spill.data();
  }
  // Garner mixed-radix digits.
  for (std::size_t i = 0; i < k; ++i) {
    const u64 p = primes_[i];
    u64 x = residues[i] % p;
    for (std::size_t j = 0; j < i; ++j) {
      const u64 d = v[j] % p;
      x = x >= d ? x - d : x + p - d;
      x = static_cast<u64>(static_cast<u128>(x) * inverse_[i][j] % p);
    }
    v[i] = x;
  }
  out = static_cast<unsigned long>(v[k - 1]);
  for (std::size_t i = k - 1; i-- > 0;) {
    mpz_mul_ui(out.get_mpz_t(), out.get_mpz_t(), primes_[i]);
    mpz_add_ui(out.get_mpz_t(), out.get_mpz_t(), v[i]);
  }
  if (out > half_) out -= modulus_;
}

IntSeries multiply_exact(const IntSeries& a, const IntSeries& b, std::size_t out_len,
                         const PrimeBasis& basis, std::optional<double> magnitude_bits,
                         unsigned threads) {
  const double bits = magnitude_bits.value_or(product_magnitude_bits(a, b, out_len));
  if (!basis.holds_magnitude_bits(bits)) {
    throw CapacityError("CRT basis of " + std::to_string(basis.capacity_bits) +
                        " bits cannot hold coefficients of " + std::to_string(bits) +
                        " bits; use a larger PrimeBasis");
  }
  if (out_len == 0) out_len = 1;
  std::vector<ModSeries> channels(basis.primes.size());
  parallel_for(basis.primes.size(), threads, [&](std::size_t i) {
    const u64 p = basis.primes[i];
    if (&a == &b) {
      channels[i] = ntt_square(reduce_mod(a, p), out_len);
    } else {
      channels[i] = ntt_multiply(reduce_mod(a, p), reduce_mod(b, p), out_len);
    }
  });
  return reconstruct(channels, basis, out_len, threads);
}

IntSeries eta_cube_sparse(std::size_t n) {
  if (n < 1) throw InputError("eta_cube_sparse requires N >= 1");
  IntSeries out(n + 1);
  for (std::size_t k = 0;; ++k) {
    const std::size_t t = k * (k + 1) / 2;
    if (t > n) break;
    const long value = static_cast<long>(2 * k + 1);
    out.coeffs[t] = (k % 2 == 0) ? value : -value;
  }
  return out;
}

IntSeries eisenstein(int weight, std::size_t n) {
  if (weight != 4 && weight != 6) {
    throw InputError("eisenstein: weight must be 4 or 6, got " + std::to_string(weight));
  }
  const int power = weight - 1;
  std::vector<i128> sigma(n + 1, 0);
  for (std::size_t d = 1; d <= n; ++d) {
    i128 dk = 1;
    for (int e = 0; e < power; ++e) dk *= static_cast<i128>(d);
    for (std::size_t m = d; m <= n; m += d) sigma[m] += dk;
  }
  const i128 scale = weight == 4 ? 240 : -504;
  IntSeries out(n + 1);
  out.coeffs[0] = 1;
  for (std::size_t m = 1; m <= n; ++m) out.coeffs[m] = to_mpz(scale * sigma[m]);
  return out;
}

double deligne_magnitude_bits(int weight, std::size_t n) {
  if (n <= 1) return 0.0;
  if (n > kDivisorSieveLimit) return closed_form_bits(weight, n);
  const auto d2 = FactorSieve(static_cast<std::uint32_t>(n)).divisor_counts();
  const double half = 0.5 * (weight - 1);
  double best = 0.0;
  for (std::size_t m = 2; m <= n; ++m) {
    best = std::max(best, std::log2(static_cast<double>(d2[m])) + half * std::log2(static_cast<double>(m)));
  }
  return best + 1e-9;
}

std::size_t max_int128_limit(int weight) {
  std::size_t lo = 1;
  std::size_t hi = std::size_t{1} << 40;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo + 1) / 2;
    if (closed_form_bits(weight, mid) < 127.0) {
      lo = mid;
    } else {
      hi = mid - 1;
    }
  }
  return lo;
}

FourierExpansion delta_expansion(std::size_t n, unsigned threads) {
  if (n < 1) throw InputError("delta_expansion requires N >= 1");

  // eta^24 is needed to degree n - 1; Delta = q * eta^24.
  const std::size_t len = n;
  std::vector<std::size_t> support;
  std::vector<long long> values;
  for (std::size_t k = 0;; ++k) {
    const std::size_t t = k * (k + 1) / 2;
    if (t >= len) break;
    support.push_back(t);
    values.push_back((k % 2 == 0) ? static_cast<long long>(2 * k + 1) : -static_cast<long long>(2 * k + 1));
  }

  // First squaring is sparse x sparse and exact in 64 bits.
  std::vector<long long> eta6(len, 0);
  for (std::size_t i = 0; i < support.size(); ++i) {
    for (std::size_t j = 0; j < support.size(); ++j) {
      const std::size_t t = support[i] + support[j];
      if (t >= len) break;
      eta6[t] += values[i] * values[j];
    }
  }

  // eta^12 and eta^24 residue-wise; reduction mod p commutes with squaring,
  // so only the final bound sizes the basis.
  const PrimeBasis basis = PrimeBasis::for_magnitude_bits(deligne_magnitude_bits(12, n));
  std::vector<ModSeries> channels(basis.primes.size());
  parallel_for(basis.primes.size(), threads, [&](std::size_t i) {
    const ModSeries eta12 = ntt_square(reduce_small(eta6, basis.primes[i]), len);
    channels[i] = ntt_square(eta12, len);
  });
  const IntSeries eta24 = reconstruct(channels, basis, len, threads);

  FourierExpansion out;
  out.weight = 12;
  out.series = IntSeries(n + 1);
  for (std::size_t i = 0; i < len; ++i) out.series.coeffs[i + 1] = eta24.coeffs[i];

  const std::size_t m = std::min(n, kEisensteinCheckLimit);
  const IntSeries e4 = eisenstein(4, m);
  const IntSeries e6 = eisenstein(6, m);
  const IntSeries e4sq = multiply_exact(e4, e4, m + 1, PrimeBasis::for_magnitude_bits(product_magnitude_bits(e4, e4, m + 1)));
  const IntSeries e4cube = multiply_exact(e4sq, e4, m + 1, PrimeBasis::for_magnitude_bits(product_magnitude_bits(e4sq, e4, m + 1)));
  const IntSeries e6sq = multiply_exact(e6, e6, m + 1, PrimeBasis::for_magnitude_bits(product_magnitude_bits(e6, e6, m + 1)));
  for (std::size_t k = 0; k <= m; ++k) {
    const mpz_class diff = e4cube.coeffs[k] - e6sq.coeffs[k];
    if (diff != 1728 * out.series.coeffs[k]) {
      throw ConsistencyError("Delta cross-check failed at q^" + std::to_string(k) +
                             ": eta route and Eisenstein route disagree");
    }
  }
  return out;
}

FourierExpansion eigenform_expansion(int weight, std::size_t n, unsigned threads) {
  const auto [a, b] = eisenstein_exponents(weight);
  FourierExpansion out = delta_expansion(n, threads);
  if (a == 0 && b == 0) return out;

  const IntSeries e4 = a > 0 ? eisenstein(4, n) : IntSeries();
  const IntSeries e6 = b > 0 ? eisenstein(6, n) : IntSeries();
  int current = 12;
  auto step = [&](const IntSeries& factor, int factor_weight) {
    current += factor_weight;
    const double bits = deligne_magnitude_bits(current, n);
    out.series = multiply_exact(out.series, factor, n + 1, PrimeBasis::for_magnitude_bits(bits), bits, threads);
  };
  for (int i = 0; i < a; ++i) step(e4, 4);
  for (int i = 0; i < b; ++i) step(e6, 6);
  out.weight = weight;
  return out;
}

}  // namespace hecke
