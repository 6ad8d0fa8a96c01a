#include "hecke/coeff_cache.hpp"

#include <array>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include "hecke/error.hpp"
#include "hecke/int128.hpp"
#include "hecke/le_io.hpp"

namespace hecke {

unsigned check_prime_power_recurrence(const FourierExpansion& e, unsigned long p) {
  const std::size_t n = e.limit();
  mpz_class p_pow;
  mpz_ui_pow_ui(p_pow.get_mpz_t(), p, static_cast<unsigned long>(e.weight - 1));
  // c_p c_{p^k} = c_{p^{k+1}} + p^{w-1} c_{p^{k-1}}
  std::size_t prev = 1;
  std::size_t cur = p;
  for (unsigned k = 1; cur <= n / p; ++k) {
    const std::size_t next = cur * p;
    if (e[p] * e[cur] != e[next] + p_pow * e[prev]) return k + 1;
    prev = cur;
    cur = next;
  }
  return 0;
}

void write_coeff_cache(std::ostream& out, const FourierExpansion& expansion) {
  out.write(kCoeffCacheMagic, sizeof kCoeffCacheMagic);
  le::put_u32(out, static_cast<std::uint32_t>(expansion.weight));
  le::put_u64(out, expansion.limit());
  for (std::size_t n = 0; n <= expansion.limit(); ++n) {
    const auto value = to_i128(expansion[n]);
    if (!value) {
      throw CacheError("coefficient c_" + std::to_string(n) + " of the weight " +
                       std::to_string(expansion.weight) + " form exceeds 128 bits");
    }
    le::put_i128(out, *value);
  }
  if (!out) throw CacheError("failed writing coefficient cache");
}

void write_coeff_cache(const std::filesystem::path& path, const FourierExpansion& expansion) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw CacheError("cannot open " + path.string() + " for writing");
  write_coeff_cache(out, expansion);
}

FourierExpansion read_coeff_cache(std::istream& in) {
  char magic[8];
  if (!in.read(magic, sizeof magic) || std::memcmp(magic, kCoeffCacheMagic, sizeof magic) != 0) {
    throw CacheError("not a HECKEQX1 coefficient cache");
  }
  const auto weight = le::get_u32(in);
  const auto n = le::get_u64(in);
  if (!in) throw CacheError("truncated coefficient cache header");
  if (!is_supported_weight(static_cast<int>(weight))) {
    throw CacheError("coefficient cache has unsupported weight " + std::to_string(weight));
  }
  FourierExpansion e;
  e.weight = static_cast<int>(weight);
  e.series = IntSeries(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    const i128 v = le::get_i128(in);
    if (!in) throw CacheError("coefficient cache truncated at c_" + std::to_string(i));
    e.series.coeffs[i] = to_mpz(v);
  }
  if (in.peek() != std::char_traits<char>::eof()) throw CacheError("trailing bytes after coefficient cache");

  if (e[0] != 0) throw CacheError("coefficient cache: c_0 != 0");
  if (n >= 1 && e[1] != 1) throw CacheError("coefficient cache: c_1 != 1");
  for (unsigned long p : {2UL, 3UL}) {
    if (const unsigned k = check_prime_power_recurrence(e, p); k != 0) {
      throw CacheError("coefficient cache fails the Hecke relation at " + std::to_string(p) + "^" +
                       std::to_string(k));
    }
  }
  return e;
}

FourierExpansion read_coeff_cache(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CacheError("cannot open " + path.string());
  return read_coeff_cache(in);
}

}  // namespace hecke
