#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "hecke/coeff_cache.hpp"
#include "hecke/error.hpp"
#include "hecke/int128.hpp"
#include "hecke/modular.hpp"
#include "hecke/series.hpp"
#include "oracles.hpp"

using namespace hecke;

namespace {

IntSeries ints(std::initializer_list<long long> v) { return IntSeries::from_ints(std::vector<long long>(v)); }

std::vector<u64> values(const ModSeries& s) { return s.coeffs; }

ModSeries mod_series(std::vector<u64> c, u64 p) { return ModSeries{p, std::move(c)}; }

}  // namespace

TEST_CASE("ntt primes are prime and support 2^32 transforms") {
  for (std::size_t i = 0; i < 6; ++i) {
    const NttPrime& p = ntt_prime(i);
    CHECK(is_prime_u64(p.modulus));
    CHECK(p.modulus < (u64{1} << 63));
    CHECK(p.two_adicity >= 32);
    CHECK(pow_mod(p.primitive_root, (p.modulus - 1) / 2, p.modulus) == p.modulus - 1);
    if (i) CHECK(p.modulus < ntt_prime(i - 1).modulus);
  }
}

TEST_CASE("montgomery multiplication matches 128-bit arithmetic") {
  const u64 p = ntt_prime(0).modulus;
  const Montgomery m(p);
  std::mt19937_64 rng(7);
  for (int i = 0; i < 10000; ++i) {
    const u64 a = rng() % p;
    const u64 b = rng() % p;
    const u64 want = static_cast<u64>(static_cast<u128>(a) * b % p);
    CHECK(m.from_mont(m.mul(m.to_mont(a), m.to_mont(b))) == want);
  }
}

TEST_CASE("ntt forward then inverse is the identity") {
  const u64 p = ntt_prime(1).modulus;
  const NttPlan plan(p, 1024);
  std::mt19937_64 rng(3);
  std::vector<u64> data(1024);
  for (auto& x : data) x = plan.field().to_mont(rng() % p);
  const auto original = data;
  plan.forward(data);
  CHECK(data != original);
  plan.inverse(data);
  CHECK(data == original);
}

TEST_CASE("ntt_multiply small cases") {
  const u64 p = ntt_prime(0).modulus;
  SUBCASE("one times b truncates b") {
    const auto b = mod_series({5, 6, 7, 8, 9}, p);
    CHECK(values(ntt_multiply(mod_series({1}, p), b, 3)) == std::vector<u64>{5, 6, 7});
  }
  SUBCASE("binomial square") {
    const auto a = mod_series({1, 1}, p);
    CHECK(values(ntt_multiply(a, a, 3)) == std::vector<u64>{1, 2, 1});
    CHECK(values(ntt_square(a, 3)) == std::vector<u64>{1, 2, 1});
  }
}

TEST_CASE("ntt_multiply matches schoolbook on random degree-200 inputs") {
  std::mt19937_64 rng(11);
  for (std::size_t idx : {0u, 2u}) {
    const u64 p = ntt_prime(idx).modulus;
    std::vector<u64> a(201), b(201);
    for (auto& x : a) x = rng() % p;
    for (auto& x : b) x = rng() % p;
    const auto got = ntt_multiply(mod_series(a, p), mod_series(b, p), 401);
    CHECK(values(got) == oracle::schoolbook_mod(a, b, p, 401));
    const auto shorter = ntt_multiply(mod_series(a, p), mod_series(b, p), 150);
    CHECK(values(shorter) == oracle::schoolbook_mod(a, b, p, 150));
  }
}

TEST_CASE("ntt_multiply is commutative") {
  std::mt19937_64 rng(5);
  const u64 p = ntt_prime(0).modulus;
  std::vector<u64> a(97), b(130);
  for (auto& x : a) x = rng() % p;
  for (auto& x : b) x = rng() % p;
  CHECK(ntt_multiply(mod_series(a, p), mod_series(b, p), 200) ==
        ntt_multiply(mod_series(b, p), mod_series(a, p), 200));
}

TEST_CASE("multiply_exact small cases") {
  const auto basis = PrimeBasis::first(2);
  CHECK(multiply_exact(ints({0, 1}), ints({0, 1}), 3, basis) == ints({0, 0, 1}));
  const std::size_t len = 40;
  IntSeries geometric(len);
  for (auto& c : geometric.coeffs) c = 1;
  IntSeries want(len);
  want[0] = 1;
  CHECK(multiply_exact(ints({1, -1}), geometric, len, basis) == want);
}

TEST_CASE("multiply_exact matches arbitrary-precision schoolbook with 100-bit coefficients") {
  gmp_randclass rng(gmp_randinit_default);
  rng.seed(2024);
  IntSeries a(150), b(170);
  for (auto& c : a.coeffs) c = rng.get_z_bits(100) - (mpz_class(1) << 99);
  for (auto& c : b.coeffs) c = rng.get_z_bits(100) - (mpz_class(1) << 99);
  const std::size_t out_len = 319;
  const auto basis = PrimeBasis::for_magnitude_bits(product_magnitude_bits(a, b, out_len));
  const IntSeries got = multiply_exact(a, b, out_len, basis);
  CHECK(got.coeffs == oracle::schoolbook(a.coeffs, b.coeffs, out_len));
  CHECK(multiply_exact(b, a, out_len, basis) == got);
  CHECK(multiply_exact(a, b, out_len, basis, std::nullopt, 4) == got);
}

TEST_CASE("multiply_exact refuses a basis that cannot hold the product") {
  IntSeries a(10);
  for (auto& c : a.coeffs) c = mpz_class(1) << 90;
  CHECK_THROWS_AS(multiply_exact(a, a, 10, PrimeBasis::first(2)), CapacityError);
}

TEST_CASE("CRT lifts to the symmetric range") {
  const auto basis = PrimeBasis::first(3);
  const CrtReconstructor crt(basis);
  for (const mpz_class& v : {mpz_class(0), mpz_class(-1), mpz_class("-123456789012345678901234567890"),
                             mpz_class("98765432109876543210987654321")}) {
    std::vector<u64> residues;
    for (u64 p : basis.primes) {
      mpz_class r = v % mpz_class(static_cast<unsigned long>(p));
      if (r < 0) r += static_cast<unsigned long>(p);
      residues.push_back(r.get_ui());
    }
    mpz_class out;
    crt.reconstruct(residues, out);
    CHECK(out == v);
  }
}

TEST_CASE("int128 round trip") {
  const i128 big = (static_cast<i128>(1) << 126) + 12345;
  CHECK(to_i128(to_mpz(big)) == big);
  CHECK(to_i128(to_mpz(-big)) == -big);
  CHECK(to_i128(mpz_class(-7)) == i128{-7});
  CHECK_FALSE(to_i128(mpz_class(1) << 127).has_value());
  CHECK(to_i128(-(mpz_class(1) << 127)).has_value());
}

TEST_CASE("eta cube is sparse and equals the direct product") {
  const IntSeries e = eta_cube_sparse(20);
  CHECK(e.coeffs == oracle::eta_power(20, 3));
  const IntSeries big = eta_cube_sparse(10'000);
  std::size_t nonzero = 0;
  for (const auto& c : big.coeffs) nonzero += c != 0;
  CHECK(nonzero <= 2 * static_cast<std::size_t>(std::ceil(std::sqrt(2.0 * 10'000))));
}

TEST_CASE("eisenstein series") {
  const IntSeries e4 = eisenstein(4, 50);
  const IntSeries e6 = eisenstein(6, 50);
  CHECK(e4[0] == 1);
  CHECK(e4[1] == 240);
  CHECK(e6[2] == -16632);
  for (std::uint64_t n = 1; n <= 50; ++n) {
    CHECK(e4[n] == 240 * oracle::sigma(3, n));
    CHECK(e6[n] == -504 * oracle::sigma(5, n));
  }
  CHECK_THROWS_AS(eisenstein(8, 10), InputError);
}

TEST_CASE("delta expansion") {
  const FourierExpansion d = delta_expansion(10);
  CHECK(d.weight == 12);
  CHECK(d[0] == 0);
  CHECK(d[1] == 1);
  CHECK(d[2] == -24);
  CHECK(d[3] == 252);
  CHECK(d[5] == 4830);
  CHECK(d[6] == d[2] * d[3]);
  CHECK(d[6] == -6048);
  CHECK(d.series.coeffs == oracle::delta(10));

  const FourierExpansion d300 = delta_expansion(300);
  CHECK(d300.series.coeffs == oracle::delta(300));
}

TEST_CASE("delta expansion does not depend on the thread count") {
  CHECK(delta_expansion(5000, 1) == delta_expansion(5000, 3));
}

TEST_CASE("eigenforms of weight 16 to 26") {
  CHECK(eigenform_expansion(12, 500) == delta_expansion(500));

  const FourierExpansion w16 = eigenform_expansion(16, 200);
  const long frozen[] = {1, 216, -3348, 13888, 52110, -723168};
  for (std::size_t n = 1; n <= 6; ++n) CHECK(w16[n] == frozen[n - 1]);
  CHECK(w16[2] * w16[2] == w16[4] + (mpz_class(1) << 15));
  CHECK(w16[6] == w16[2] * w16[3]);
  CHECK(eigenform_expansion(18, 5)[2] == -528);

  for (int k : kSupportedWeights) {
    const FourierExpansion f = eigenform_expansion(k, 2000);
    INFO("weight " << k);
    CHECK(f[1] == 1);
    for (unsigned long p : {2ul, 3ul, 5ul, 7ul}) CHECK(check_prime_power_recurrence(f, p) == 0u);
    for (std::size_t m = 2; m <= 40; ++m) {
      for (std::size_t n = 2; m * n <= 2000; ++n) {
        if (oracle::gcd(m, n) == 1) CHECK(f[m * n] == f[m] * f[n]);
      }
    }
  }
  CHECK_THROWS_AS(eigenform_expansion(14, 10), InputError);
}

TEST_CASE("eigenform coefficients respect the Deligne bound used for CRT sizing") {
  for (int k : kSupportedWeights) {
    const FourierExpansion f = eigenform_expansion(k, 3000);
    CHECK(static_cast<double>(f.series.max_bits()) <= deligne_magnitude_bits(k, 3000) + 1.0);
  }
  CHECK(max_int128_limit(12) >= 2'000'000);
  CHECK(deligne_magnitude_bits(12, max_int128_limit(12)) < 127.0);
}
