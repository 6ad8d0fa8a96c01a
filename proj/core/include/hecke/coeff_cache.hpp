#pragma once

#include <filesystem>
#include <iosfwd>

#include "hecke/series.hpp"

namespace hecke {

// Layout: "HECKEQX1", u32 weight, u64 N, then N+1 signed 128-bit
// coefficients; all integers little-endian two's complement.
inline constexpr char kCoeffCacheMagic[8] = {'H', 'E', 'C', 'K', 'E', 'Q', 'X', '1'};

// Throws CacheError if any coefficient does not fit 128 bits.
void write_coeff_cache(std::ostream& out, const FourierExpansion& expansion);
void write_coeff_cache(const std::filesystem::path& path, const FourierExpansion& expansion);

// Throws CacheError on a bad header, truncation, or a failed validation:
// c_0 = 0, c_1 = 1 and c_p c_{p^k} = c_{p^{k+1}} + p^{w-1} c_{p^{k-1}} for p = 2, 3.
FourierExpansion read_coeff_cache(std::istream& in);
FourierExpansion read_coeff_cache(const std::filesystem::path& path);

// Exact prime-power Hecke recurrence at p for every p^{k+1} <= N; returns the
// first failing exponent k+1, or 0 if all hold.
unsigned check_prime_power_recurrence(const FourierExpansion& expansion, unsigned long p);

}  // namespace hecke
