#include <doctest.h>

#include <algorithm>
#include <sstream>

#include "hecke/coeff_cache.hpp"
#include "hecke/error.hpp"

using namespace hecke;

namespace {

std::string encode(const FourierExpansion& e) {
  std::ostringstream out;
  write_coeff_cache(out, e);
  return out.str();
}

FourierExpansion decode(const std::string& bytes) {
  std::istringstream in(bytes);
  return read_coeff_cache(in);
}

constexpr std::size_t kHeader = 8 + 4 + 8;

}  // namespace

TEST_CASE("coefficient cache round trip") {
  for (int k : {12, 16, 26}) {
    const FourierExpansion e = eigenform_expansion(k, std::min<std::size_t>(3000, max_int128_limit(k)));
    CHECK(decode(encode(e)) == e);
  }
  const FourierExpansion d = delta_expansion(20'000);
  const std::string bytes = encode(d);
  CHECK(bytes.size() == kHeader + 16 * 20'001);
  CHECK(decode(bytes) == d);
}

TEST_CASE("coefficient cache rejects corruption") {
  const std::string bytes = encode(delta_expansion(1000));
  SUBCASE("tau(8) changed") {
    std::string bad = bytes;
    bad[kHeader + 16 * 8] ^= 0x01;
    CHECK_THROWS_AS(decode(bad), CacheError);
  }
  SUBCASE("c_1 changed") {
    std::string bad = bytes;
    bad[kHeader + 16] ^= 0x02;
    CHECK_THROWS_AS(decode(bad), CacheError);
  }
  SUBCASE("truncated") { CHECK_THROWS_AS(decode(bytes.substr(0, bytes.size() - 1)), CacheError); }
  SUBCASE("trailing bytes") { CHECK_THROWS_AS(decode(bytes + "x"), CacheError); }
  SUBCASE("bad magic") {
    std::string bad = bytes;
    bad[7] = '2';
    CHECK_THROWS_AS(decode(bad), CacheError);
  }
}

TEST_CASE("coefficients wider than 128 bits are refused") {
  FourierExpansion e = delta_expansion(10);
  e.series[7] = mpz_class(1) << 130;
  std::ostringstream out;
  CHECK_THROWS_AS(write_coeff_cache(out, e), CacheError);
}

TEST_CASE("prime-power recurrence detects a bad coefficient") {
  FourierExpansion e = delta_expansion(1000);
  CHECK(check_prime_power_recurrence(e, 2) == 0u);
  e.series[27] += 1;
  CHECK(check_prime_power_recurrence(e, 2) == 0u);
  CHECK(check_prime_power_recurrence(e, 3) == 3u);
}
