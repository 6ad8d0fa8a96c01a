#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "hecke/modular.hpp"

namespace hecke {

// Dense truncated power series with exact integer coefficients;
// coeffs[n] is the coefficient of q^n.
struct IntSeries {
  std::vector<mpz_class> coeffs;

  IntSeries() : coeffs(1) {}
  explicit IntSeries(std::size_t length) : coeffs(length == 0 ? 1 : length) {}
  explicit IntSeries(std::vector<mpz_class> c);
  static IntSeries from_ints(std::span<const long long> values);

  [[nodiscard]] std::size_t length() const { return coeffs.size(); }
  [[nodiscard]] std::size_t degree() const { return coeffs.size() - 1; }
  const mpz_class& operator[](std::size_t n) const { return coeffs[n]; }
  mpz_class& operator[](std::size_t n) { return coeffs[n]; }

  // Bit length of the largest |coefficient|.
  [[nodiscard]] std::size_t max_bits() const;

  friend bool operator==(const IntSeries&, const IntSeries&) = default;
};

// Residues of a series modulo a single NTT prime.
struct ModSeries {
  u64 modulus = 0;
  std::vector<u64> coeffs;

  [[nodiscard]] std::size_t length() const { return coeffs.size(); }
  friend bool operator==(const ModSeries&, const ModSeries&) = default;
};

// The level-1 cusp spaces of dimension one.
inline constexpr int kSupportedWeights[] = {12, 16, 18, 20, 22, 26};
bool is_supported_weight(int weight);

// q-expansion of the normalized eigenform of a given weight, c_1 = 1.
struct FourierExpansion {
  int weight = 12;
  IntSeries series;

  [[nodiscard]] std::size_t limit() const { return series.degree(); }
  const mpz_class& operator[](std::size_t n) const { return series[n]; }
  friend bool operator==(const FourierExpansion&, const FourierExpansion&) = default;
};

ModSeries reduce_mod(const IntSeries& a, u64 modulus);

// Truncated product mod a.modulus via a power-of-two NTT. Both inputs are
// truncated to out_len before transforming, so the transform length is the
// next power of two >= min(len a, out_len) + min(len b, out_len) - 1.
ModSeries ntt_multiply(const ModSeries& a, const ModSeries& b, std::size_t out_len);
ModSeries ntt_square(const ModSeries& a, std::size_t out_len);

// Exact truncated product, computed residue-wise over `basis` and rebuilt by
// signed CRT. magnitude_bits bounds log2 max |result coefficient|; when
// absent a bound is derived from the inputs. Throws CapacityError when the
// basis cannot hold that bound.
IntSeries multiply_exact(const IntSeries& a, const IntSeries& b, std::size_t out_len,
                         const PrimeBasis& basis, std::optional<double> magnitude_bits = std::nullopt,
                         unsigned threads = 1);

// Naive a-priori bound on log2 max |(a*b)_n| for n < out_len.
double product_magnitude_bits(const IntSeries& a, const IntSeries& b, std::size_t out_len);

// Signed CRT of one coefficient from its residues over basis.primes, lifted
// into (-M/2, M/2].
class CrtReconstructor {
 public:
  explicit CrtReconstructor(const PrimeBasis& basis);
  void reconstruct(std::span<const u64> residues, mpz_class& out) const;

 private:
  std::vector<u64> primes_;
  std::vector<std::vector<u64>> inverse_;  // inverse_[i][j] = p_j^{-1} mod p_i, j < i
  mpz_class modulus_;
  mpz_class half_;
};

// prod_{n>=1} (1 - q^n)^3 = sum_k (-1)^k (2k+1) q^{k(k+1)/2} up to degree N.
IntSeries eta_cube_sparse(std::size_t n);

// E_4 = 1 + 240 sum sigma_3(n) q^n or E_6 = 1 - 504 sum sigma_5(n) q^n.
IntSeries eisenstein(int weight, std::size_t n);

// Delta = q prod (1 - q^n)^24 to degree N, built as (eta^3)^8 by repeated
// squaring; cross-checked against (E_4^3 - E_6^2)/1728 up to min(N, 10^4).
FourierExpansion delta_expansion(std::size_t n, unsigned threads = 1);

// Delta * E_4^a * E_6^b, the normalized eigenform of the given weight.
FourierExpansion eigenform_expansion(int weight, std::size_t n, unsigned threads = 1);

// log2 max_{m<=N} d(m) m^{(k-1)/2}, the Deligne bound on |c_m|, with d(m)
// taken from a divisor-count sieve.
double deligne_magnitude_bits(int weight, std::size_t n);

// Largest N whose weight-k coefficients provably fit a signed 128-bit integer,
// using d(n) <= 2 sqrt(n) so that no sieve is needed.
std::size_t max_int128_limit(int weight);

}  // namespace hecke
