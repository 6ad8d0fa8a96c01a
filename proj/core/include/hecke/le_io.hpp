#pragma once

#include <bit>
#include <cstdint>
#include <istream>
#include <ostream>

// Little-endian encoders for the binary cache formats.
namespace hecke::le {

template <typename U>
void put_unsigned(std::ostream& out, U value) {
  char bytes[sizeof(U)];
  for (std::size_t i = 0; i < sizeof(U); ++i) {
    bytes[i] = static_cast<char>(static_cast<unsigned char>(value & 0xff));
    value >>= 8;
  }
  out.write(bytes, sizeof bytes);
}

template <typename U>
U get_unsigned(std::istream& in) {
  unsigned char bytes[sizeof(U)] = {};
  in.read(reinterpret_cast<char*>(bytes), sizeof bytes);
  U value = 0;
  for (std::size_t i = sizeof(U); i-- > 0;) value = static_cast<U>((value << 8) | bytes[i]);
  return value;
}

inline void put_u32(std::ostream& out, std::uint32_t v) { put_unsigned(out, v); }
inline void put_u64(std::ostream& out, std::uint64_t v) { put_unsigned(out, v); }
inline void put_i128(std::ostream& out, __int128 v) { put_unsigned(out, static_cast<unsigned __int128>(v)); }
inline void put_f64(std::ostream& out, double v) { put_unsigned(out, std::bit_cast<std::uint64_t>(v)); }

inline std::uint32_t get_u32(std::istream& in) { return get_unsigned<std::uint32_t>(in); }
inline std::uint64_t get_u64(std::istream& in) { return get_unsigned<std::uint64_t>(in); }
inline __int128 get_i128(std::istream& in) { return static_cast<__int128>(get_unsigned<unsigned __int128>(in)); }
inline double get_f64(std::istream& in) { return std::bit_cast<double>(get_u64(in)); }

}  // namespace hecke::le
