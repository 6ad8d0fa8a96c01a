#include "hecke/singular_series.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <string>

#include "hecke/error.hpp"
#include "hecke/parallel.hpp"
#include "hecke/summation.hpp"

namespace hecke {

namespace {

std::vector<std::pair<std::uint64_t, unsigned>> factor_trial(std::uint64_t n) {
  std::vector<std::pair<std::uint64_t, unsigned>> out;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

std::vector<std::uint64_t> divisors(std::uint64_t n) {
  std::vector<std::uint64_t> small;
  std::vector<std::uint64_t> large;
  for (std::uint64_t d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    small.push_back(d);
    if (d != n / d) large.push_back(n / d);
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

// sum_{j > depth} (l + j + 1)^2 p^{-j}: the Deligne-bound tail of F_p.
double deligne_tail(std::uint64_t p, unsigned l, unsigned depth) {
  const double inv_p = 1.0 / static_cast<double>(p);
  double weight = std::pow(inv_p, depth + 1);
  double sum = 0.0;
  for (unsigned j = depth + 1; j < depth + 4000; ++j) {
    const double a = static_cast<double>(l + j + 1);
    const double term = a * a * weight;
    sum += term;
    if (term < 1e-19 * sum || weight == 0.0) break;
    weight *= inv_p;
  }
  return sum;
}

double euler_local_base(double lambda_p, std::uint64_t p) {
  const double pd = static_cast<double>(p);
  return (pd - 1.0) / (pd + 1.0) * (1.0 - (lambda_p * lambda_p - 2.0) / pd + 1.0 / (pd * pd));
}

struct MuPhi {
  int mu = 1;
  std::uint64_t phi = 1;
};

MuPhi mu_phi(std::uint64_t n) {
  MuPhi out;
  for (const auto& [p, e] : factor_trial(n)) {
    out.mu = e > 1 ? 0 : -out.mu;
    out.phi *= p - 1;
    for (unsigned i = 1; i < e; ++i) out.phi *= p;
  }
  return out;
}

}  // namespace

bool RankinConstant::consistent() const {
  return std::abs(euler_estimate - empirical_estimate) <= 3.0 * uncertainty;
}

double rankin_euler_factor(double lambda_p, std::uint64_t p) {
  const double pd = static_cast<double>(p);
  return 1.0 / ((1.0 - 1.0 / pd) * (1.0 - (lambda_p * lambda_p - 2.0) / pd + 1.0 / (pd * pd)));
}

ConstantEstimate rankin_constant_euler(const EigenvalueTable& table, std::size_t prime_cutoff) {
  if (prime_cutoff < 1000) throw InputError("rankin_constant_euler: prime cutoff below 10^3");
  if (prime_cutoff > table.limit) {
    throw InputError("rankin_constant_euler: cutoff " + std::to_string(prime_cutoff) + " exceeds table limit");
  }
  const FactorSieve sieve(static_cast<std::uint32_t>(prime_cutoff));
  const double inv_zeta2 = 6.0 / (std::numbers::pi * std::numbers::pi);
  const std::size_t decade_start = prime_cutoff / 10;

  CompensatedSum log_product;
  std::vector<double> decade;
  for (std::uint32_t p : sieve.primes()) {
    log_product.add(std::log(rankin_euler_factor(table.values[p], p)));
    if (p > decade_start) decade.push_back(log_product.value());
  }
  const double final_log = log_product.value();
  ConstantEstimate out;
  out.value = std::exp(final_log) * inv_zeta2;
  for (double l : decade) out.uncertainty = std::max(out.uncertainty, std::abs(std::exp(l) * inv_zeta2 - out.value));
  return out;
}

double lambda_square_sum(const EigenvalueTable& table, std::size_t from, std::size_t to) {
  if (from < 1 || to > table.limit) throw InputError("lambda_square_sum: range outside table");
  CompensatedSum acc;
  for (std::size_t n = from; n <= to; ++n) acc.add(table.values[n] * table.values[n]);
  return acc.value();
}

std::vector<std::size_t> linear_grid(std::size_t cap, std::size_t points) {
  std::vector<std::size_t> grid;
  for (std::size_t i = 1; i <= points; ++i) grid.push_back(cap * i / points);
  return grid;
}

ConstantEstimate rankin_constant_empirical(const EigenvalueTable& table, std::span<const std::size_t> grid) {
  if (grid.size() < 3) throw InputError("rankin_constant_empirical: grid needs at least 3 points");
  std::vector<std::size_t> xs(grid.begin(), grid.end());
  std::ranges::sort(xs);
  if (xs.front() < 1 || xs.back() > table.limit) throw InputError("rankin_constant_empirical: grid outside table");

  // Prefix sums shared across grid points.
  std::vector<double> sums;
  CompensatedSum acc;
  std::size_t n = 1;
  for (std::size_t x : xs) {
    for (; n <= x; ++n) acc.add(table.values[n] * table.values[n]);
    sums.push_back(acc.value());
  }
  CompensatedSum num;
  CompensatedSum den;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double x = static_cast<double>(xs[i]);
    num.add(sums[i] * x);
    den.add(x * x);
  }
  ConstantEstimate out;
  out.value = num.value() / den.value();
  for (std::size_t i = 0; i < xs.size(); ++i) {
    out.uncertainty = std::max(out.uncertainty, std::abs(sums[i] / static_cast<double>(xs[i]) - out.value));
  }
  return out;
}

RankinConstant rankin_constant(const EigenvalueTable& table, std::size_t prime_cutoff,
                               std::span<const std::size_t> grid) {
  const ConstantEstimate euler = rankin_constant_euler(table, prime_cutoff);
  const ConstantEstimate empirical = rankin_constant_empirical(table, grid);
  RankinConstant out;
  out.euler_estimate = euler.value;
  out.empirical_estimate = empirical.value;
  out.chosen = empirical.value;
  out.uncertainty = euler.uncertainty + empirical.uncertainty;
  return out;
}

LocalFactorW local_factor_w(std::uint64_t q0, std::uint64_t q1, double c1f, const EigenvalueTable& table,
                            double tol, unsigned depth_scale) {
  if (q0 < 1 || q1 < 1) throw InputError("local_factor_w requires q0, q1 >= 1");
  if (!(tol > 0.0)) throw InputError("local_factor_w requires tol > 0");

  std::map<std::uint64_t, std::pair<unsigned, unsigned>> exps;  // p -> (exp in q0, exp in q1)
  for (const auto& [p, e] : factor_trial(q0)) exps[p].first = e;
  for (const auto& [p, e] : factor_trial(q1)) exps[p].second = e;

  double base = c1f;
  double scale = std::abs(c1f);
  std::vector<std::pair<std::uint64_t, unsigned>> series_primes;
  std::vector<double> fixed_factors;
  for (const auto& [p, e] : exps) {
    if (p > table.limit) {
      throw InputError("local_factor_w: prime " + std::to_string(p) + " beyond table coverage " +
                       std::to_string(table.limit));
    }
    const double lp = table.values[p];
    const double b = euler_local_base(lp, p);
    base *= b;
    scale *= std::abs(b);
    const unsigned l = e.first;
    if (l == 0) continue;
    if (e.second > 0) {
      const double v = lambda_prime_power(lp, static_cast<int>(l));
      fixed_factors.push_back(v * v);
      scale *= static_cast<double>((l + 1) * (l + 1));
    } else {
      series_primes.emplace_back(p, l);
      scale *= deligne_tail(p, l, 0) + static_cast<double>((l + 1) * (l + 1));
    }
  }

  LocalFactorW out{q0, q1, 0.0, 0.0};
  double value = base;
  for (double f : fixed_factors) value *= f;
  if (series_primes.empty()) {
    out.value = value;
    return out;
  }

  const double target = tol / (static_cast<double>(series_primes.size()) * std::max(scale, 1e-300));
  double with_tails = std::abs(value);
  double without_tails = std::abs(value);
  for (const auto& [p, l] : series_primes) {
    unsigned depth = 0;
    while (deligne_tail(p, l, depth) >= target && depth < 4000) ++depth;
    depth *= depth_scale;

    const double lp = table.values[p];
    const double inv_p = 1.0 / static_cast<double>(p);
    // lambda(p^i) for i = l .. l + depth via the three-term recurrence.
    double prev = 1.0;
    double cur = std::clamp(lp, -2.0, 2.0);
    for (unsigned i = 1; i < l; ++i) {
      const double next = std::clamp(lp, -2.0, 2.0) * cur - prev;
      prev = cur;
      cur = next;
    }
    CompensatedSum f;
    double weight = 1.0;
    for (unsigned j = 0; j <= depth; ++j) {
      f.add(cur * cur * weight);
      const double next = std::clamp(lp, -2.0, 2.0) * cur - prev;
      prev = cur;
      cur = next;
      weight *= inv_p;
    }
    const double tail = deligne_tail(p, l, depth);
    value *= f.value();
    without_tails *= std::abs(f.value());
    with_tails *= std::abs(f.value()) + tail;
  }
  out.value = value;
  out.truncation_error = with_tails - without_tails;
  return out;
}

DqCoefficient dq_coefficient(std::uint64_t q, double c1f, const EigenvalueTable& table, double tol,
                             unsigned depth_scale) {
  if (q < 1) throw InputError("dq_coefficient requires q >= 1");
  CompensatedSum acc;
  for (std::uint64_t q0 : divisors(q)) {
    const std::uint64_t q1 = q / q0;
    const MuPhi mp = mu_phi(q1);
    if (mp.mu == 0) continue;
    const LocalFactorW w = local_factor_w(q0, q1, c1f, table, tol, depth_scale);
    acc.add(static_cast<double>(mp.mu) / (static_cast<double>(mp.phi) * static_cast<double>(q0)) * w.value);
  }
  return {q, acc.value()};
}

std::size_t dq_term_count(std::uint64_t q) {
  std::size_t count = 0;
  for (std::uint64_t q0 : divisors(q)) {
    if (mu_phi(q / q0).mu != 0) ++count;
  }
  return count;
}

SingularSeries::SingularSeries(double c1f, const EigenvalueTable& table, std::size_t capacity, double tol,
                               unsigned threads, unsigned depth_scale)
    : c1f_(c1f), capacity_(capacity) {
  if (capacity < 1) throw InputError("SingularSeries requires capacity >= 1");
  if (capacity > table.limit) {
    throw InputError("SingularSeries: q_max " + std::to_string(capacity) + " exceeds prime coverage " +
                     std::to_string(table.limit));
  }
  dq_.assign(capacity + 1, 0.0);
  parallel_for(capacity, threads, [&](std::size_t i) {
    dq_[i + 1] = dq_coefficient(i + 1, c1f, table, tol, depth_scale).value;
  });

  const FactorSieve sieve(static_cast<std::uint32_t>(std::max<std::size_t>(capacity, 2)));
  mu_.assign(capacity + 1, 0);
  phi_.assign(capacity + 1, 0);
  for (std::uint32_t q = 1; q <= capacity; ++q) {
    mu_[q] = sieve.mobius(q);
    phi_[q] = sieve.euler_phi(q);
  }

  const std::size_t fit = std::min(capacity, kEnvelopeFitLimit);
  double worst = 0.0;
  for (std::size_t q = 1; q <= fit; ++q) {
    worst = std::max(worst, std::abs(dq_[q]) * std::pow(static_cast<double>(q), kEnvelopeExponent));
  }
  envelope_c_ = kEnvelopeSafety * worst;
}

double SingularSeries::dq(std::size_t q) const {
  if (q < 1 || q > capacity_) throw InputError("D_q requested outside cached range");
  return dq_[q];
}

double SingularSeries::envelope(std::uint64_t q) const {
  return envelope_c_ * std::pow(static_cast<double>(q), -kEnvelopeExponent);
}

std::int64_t SingularSeries::ramanujan(std::uint32_t q, std::uint64_t h) const {
  const std::uint32_t g = h == 0 ? q : static_cast<std::uint32_t>(gcd_u64(q, h));
  const std::uint32_t r = q / g;
  if (mu_[r] == 0) return 0;
  return mu_[r] * static_cast<std::int64_t>(phi_[q] / phi_[r]);
}

double SingularSeries::tail_bound(std::uint64_t h, std::size_t q_max) const {
  const double s = 2.0 * kEnvelopeExponent;
  double total = 0.0;
  for (std::uint64_t d : divisors(h)) {
    const std::uint64_t m = q_max / d;
    // sum_{q' >= m+1} q'^{-s} <= integral_m^inf x^{-s} dx
    const double inner = m == 0 ? 1.0 + 1.0 / (s - 1.0)
                                : std::pow(static_cast<double>(m), 1.0 - s) / (s - 1.0);
    total += std::pow(static_cast<double>(d), 1.0 - s) * inner;
  }
  return envelope_c_ * envelope_c_ * total;
}

SingularSeriesResult SingularSeries::bh(std::uint64_t h, std::size_t q_max, bool keep_terms) const {
  if (h < 1) throw InputError("B_h requires h >= 1");
  if (q_max < 1 || q_max > capacity_) {
    throw InputError("B_h: q_max " + std::to_string(q_max) + " outside cached D_q range " +
                     std::to_string(capacity_));
  }
  SingularSeriesResult out;
  out.h = h;
  out.q_max = q_max;
  CompensatedSum acc;
  if (keep_terms) out.terms.reserve(q_max);
  for (std::uint32_t q = 1; q <= q_max; ++q) {
    const double term = static_cast<double>(ramanujan(q, h)) * dq_[q] * dq_[q];
    acc.add(term);
    if (keep_terms) out.terms.push_back(term);
  }
  out.value = acc.value();
  out.tail_bound = tail_bound(h, q_max);
  return out;
}

SingularSeriesResult SingularSeries::bh_adaptive(std::uint64_t h, double tol, bool keep_terms) const {
  std::size_t q_max = std::min<std::size_t>(16, capacity_);
  while (tail_bound(h, q_max) >= tol) {
    if (q_max == capacity_) {
      throw InputError("B_h: tail bound below " + std::to_string(tol) + " needs q_max beyond " +
                       std::to_string(capacity_));
    }
    q_max = std::min(capacity_, 2 * q_max);
  }
  return bh(h, q_max, keep_terms);
}

std::vector<SingularSeriesResult> SingularSeries::bh_batch(std::uint64_t h_max, std::size_t q_max,
                                                           unsigned threads) const {
  std::vector<SingularSeriesResult> out(h_max);
  parallel_for(h_max, threads, [&](std::size_t i) { out[i] = bh(i + 1, q_max); });
  return out;
}

SingularSeriesResult singular_series_bh(std::uint64_t h, double c1f, const EigenvalueTable& table,
                                        std::size_t q_max, double tol) {
  return SingularSeries(c1f, table, q_max, tol).bh(h, q_max, true);
}

double dq_bound_shape_constant(const SingularSeries& series, std::size_t q_max) {
  double worst = 0.0;
  for (std::size_t q = 1; q <= std::min(q_max, series.capacity()); ++q) {
    const auto d2 = static_cast<double>(divisors(q).size());
    const double shape = d2 * std::pow(std::log(static_cast<double>(q) + 2.0), 7.0) / static_cast<double>(q);
    worst = std::max(worst, std::abs(series.dq(q)) / shape);
  }
  return worst;
}

}  // namespace hecke
