#pragma once

#include <gmpxx.h>

#include <optional>

namespace hecke {

using i128 = __int128;

mpz_class to_mpz(i128 value);

// Empty when the value does not fit a signed 128-bit integer.
std::optional<i128> to_i128(const mpz_class& value);

}  // namespace hecke
