#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fixtures.hpp"
#include "hecke/error.hpp"
#include "hecke/singular_series.hpp"

using namespace hecke;

TEST_CASE("Rankin-Selberg constant, empirical route") {
  const auto ones = fixture::constant_table(10'000);
  const std::vector<std::size_t> grid = {1000, 5000, 10'000};
  const ConstantEstimate c = rankin_constant_empirical(ones, grid);
  CHECK(c.value == 1.0);
  CHECK(c.uncertainty == 0.0);
  const std::vector<std::size_t> short_grid = {100, 200};
  CHECK_THROWS_AS(rankin_constant_empirical(ones, short_grid), InputError);

  const auto& t = fixture::table();
  const auto g = linear_grid(fixture::kLimit);
  const ConstantEstimate e = rankin_constant_empirical(t, g);
  for (std::size_t x : g) CHECK(std::abs(lambda_square_sum(t, 1, x) / x - e.value) < 0.02 * e.value);
}

TEST_CASE("Rankin-Selberg constant, Euler product route") {
  const auto zero = fixture::constant_table(20'000, 0.0);
  auto t0 = zero;
  t0.values[1] = 1.0;
  const ConstantEstimate z = rankin_constant_euler(t0, 20'000);
  double direct = 6.0 / (std::numbers::pi * std::numbers::pi);
  const FactorSieve s(20'000);
  for (std::uint32_t p : s.primes()) {
    const double x = 1.0 / p;
    direct /= (1.0 - x) * (1.0 + 2.0 * x + x * x);
  }
  CHECK(z.value == doctest::Approx(direct).epsilon(1e-12));
  CHECK_THROWS_AS(rankin_constant_euler(t0, 999), InputError);
  CHECK_THROWS_AS(rankin_constant_euler(t0, 30'000), InputError);

  const auto& t = fixture::table();
  const ConstantEstimate small = rankin_constant_euler(t, 100'000);
  const ConstantEstimate large = rankin_constant_euler(t, fixture::kLimit);
  CHECK(std::abs(small.value - large.value) <= small.uncertainty + large.uncertainty);
  CHECK(std::abs(large.value - fixture::c1f()) <= 3 * (large.uncertainty + 1e-4));
}

TEST_CASE("local factor w") {
  const auto& t = fixture::table();
  const double c = fixture::c1f();
  CHECK(local_factor_w(1, 1, c, t, 1e-13).value == c);
  for (std::uint64_t p : {2u, 3u, 7u, 101u}) {
    const double l = t[p];
    const double want = c * (p - 1.0) / (p + 1.0) * (1.0 - (l * l - 2.0) / p + 1.0 / (p * p));
    CHECK(local_factor_w(1, p, c, t, 1e-13).value == doctest::Approx(want).epsilon(1e-14));
  }
}

TEST_CASE("w(p, 1) is the mean of lambda(pn)^2") {
  const auto& t = fixture::table();
  for (std::uint64_t p : {2u, 3u}) {
    const std::size_t x = 100'000;
    double s = 0.0;
    for (std::size_t n = 1; n <= x; ++n) s += t[p * n] * t[p * n];
    const double w = local_factor_w(p, 1, fixture::c1f(), t, 1e-13).value;
    INFO("p = " << p << ", w = " << w << ", mean = " << s / x);
    CHECK(std::abs(s / x - w) < 0.05 * w);
  }
}

TEST_CASE("D_q structure") {
  const auto& t = fixture::table();
  const double c = fixture::c1f();
  CHECK(dq_coefficient(1, c, t, 1e-13).value == c);
  for (std::uint64_t p : {2u, 5u, 97u}) {
    const double want = local_factor_w(p, 1, c, t, 1e-13).value / p - local_factor_w(1, p, c, t, 1e-13).value / (p - 1.0);
    CHECK(dq_coefficient(p, c, t, 1e-13).value == doctest::Approx(want).epsilon(1e-13));
  }
  const FactorSieve s(1000);
  for (std::uint32_t q = 1; q <= 1000; ++q) {
    if (s.mobius(q) != 0) REQUIRE(dq_term_count(q) == s.divisor_count(q));
  }
  CHECK(dq_term_count(4) == 2);
  CHECK(dq_term_count(8) == 2);
}

TEST_CASE("D_q and B_h are stable under deeper per-prime series") {
  const auto& t = fixture::table();
  const SingularSeries base(fixture::c1f(), t, 300);
  const SingularSeries deep(fixture::c1f(), t, 300, 1e-13, 1, 2);
  for (std::size_t q = 1; q <= 300; ++q) {
    REQUIRE(std::abs(deep.dq(q) - base.dq(q)) <= 1e-10 * std::abs(base.dq(q)) + 1e-300);
  }
  for (std::uint64_t h = 1; h <= 50; ++h) {
    const double a = base.bh(h, 300).value;
    CHECK(std::abs(deep.bh(h, 300).value - a) <= 1e-10 * std::abs(a));
  }
}

TEST_CASE("D_q fits a fixed multiple of the shape d(q) (log q)^7 / q") {
  const SingularSeries series(fixture::c1f(), fixture::table(), 200);
  const double fitted = dq_bound_shape_constant(series, 100);
  const double full = dq_bound_shape_constant(series, 200);
  CHECK(std::isfinite(fitted));
  CHECK(fitted > 0.0);
  CHECK(full <= fitted);
}

TEST_CASE("B_h leading term and tail bound") {
  const SingularSeries series(fixture::c1f(), fixture::table(), 2000);
  const double c = fixture::c1f();
  const auto r = series.bh(6, 1000, true);
  REQUIRE(r.terms.size() == 1000);
  CHECK(r.terms[0] == c * c);
  CHECK(std::isfinite(r.tail_bound));
  CHECK(r.tail_bound > 0.0);
  CHECK(r.value == doctest::Approx(singular_series_bh(6, c, fixture::table(), 1000).value).epsilon(1e-12));

  for (std::uint64_t h = 1; h <= 500; ++h) {
    const auto a = series.bh(h, 1000);
    const auto b = series.bh(h, 2000);
    REQUIRE(std::abs(b.value - a.value) < a.tail_bound);
  }
}

TEST_CASE("adaptive B_h meets the tolerance") {
  const SingularSeries series(fixture::c1f(), fixture::table(), 4096);
  const auto r = series.bh_adaptive(1, 0.05);
  CHECK(r.tail_bound < 0.05);
  CHECK(r.q_max <= 4096);
  CHECK_THROWS_AS((void)series.bh_adaptive(1, 1e-9), InputError);
}

TEST_CASE("mean of B_h approaches c1f^2") {
  const SingularSeries series(fixture::c1f(), fixture::table(), 1000);
  const double c2 = fixture::c1f() * fixture::c1f();
  const auto all = series.bh_batch(10'000, 1000);
  double previous = INFINITY;
  for (std::size_t h_max : {100u, 1000u, 10'000u}) {
    double s = 0.0;
    for (std::size_t i = 0; i < h_max; ++i) s += all[i].value;
    const double gap = std::abs(s / h_max - c2);
    INFO("H = " << h_max << ", gap = " << gap);
    CHECK(gap < previous);
    previous = gap;
  }
  CHECK(previous < 0.02 * c2);
}

TEST_CASE("B_h is bounded by a multiple of d(h)") {
  const SingularSeries series(fixture::c1f(), fixture::table(), 1000);
  const FactorSieve s(10'000);
  const auto all = series.bh_batch(10'000, 1000);
  double fitted = 0.0;
  for (std::uint32_t h = 1; h <= 1000; ++h) fitted = std::max(fitted, std::abs(all[h - 1].value) / s.divisor_count(h));
  for (std::uint32_t h = 1; h <= 10'000; ++h) {
    REQUIRE(std::abs(all[h - 1].value) <= fitted * s.divisor_count(h));
  }
}

TEST_CASE("B_h batch does not depend on the thread count") {
  const SingularSeries one(fixture::c1f(), fixture::table(), 500, 1e-13, 1);
  const SingularSeries four(fixture::c1f(), fixture::table(), 500, 1e-13, 4);
  for (std::size_t q = 1; q <= 500; ++q) REQUIRE(one.dq(q) == four.dq(q));
  const auto a = one.bh_batch(300, 500, 1);
  const auto b = one.bh_batch(300, 500, 4);
  for (std::size_t i = 0; i < a.size(); ++i) REQUIRE(a[i].value == b[i].value);
}
