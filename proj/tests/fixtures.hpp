#pragma once

#include "hecke/arith.hpp"
#include "hecke/hecke_table.hpp"
#include "hecke/series.hpp"
#include "hecke/singular_series.hpp"

namespace fixture {

inline constexpr std::size_t kLimit = 300'000;

inline const hecke::FourierExpansion& delta() {
  static const hecke::FourierExpansion e = hecke::delta_expansion(kLimit);
  return e;
}

inline const hecke::EigenvalueTable& table() {
  static const hecke::EigenvalueTable t = hecke::normalize(delta());
  return t;
}

inline const hecke::FactorSieve& sieve() {
  static const hecke::FactorSieve s(kLimit);
  return s;
}

inline double c1f() {
  static const double c = [] {
    const auto grid = hecke::linear_grid(kLimit);
    return hecke::rankin_constant_empirical(table(), grid).value;
  }();
  return c;
}

// lambda(n) = 1 for every n.
inline hecke::EigenvalueTable constant_table(std::size_t limit, double value = 1.0) {
  hecke::EigenvalueTable t;
  t.limit = limit;
  t.values.assign(limit + 1, value);
  t.values[0] = 0.0;
  t.source = "synthetic";
  return t;
}

}  // namespace fixture
