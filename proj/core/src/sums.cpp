#include "hecke/sums.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "hecke/error.hpp"
#include "hecke/parallel.hpp"
#include "hecke/summation.hpp"

namespace hecke {

namespace {

constexpr std::size_t kPhaseBlock = std::size_t{1} << 16;

std::vector<double> squares(const EigenvalueTable& table, std::size_t upto) {
  std::vector<double> sq(upto + 1, 0.0);
  for (std::size_t n = 1; n <= upto; ++n) sq[n] = table.values[n] * table.values[n];
  return sq;
}

double shifted_kernel(std::span<const double> sq, std::size_t x, std::uint64_t h) {
  CompensatedSum acc;
  const double* a = sq.data() + x;
  const double* b = sq.data() + x + h;
  for (std::size_t i = 0; i <= x; ++i) acc.add(a[i] * b[i]);
  return acc.value();
}

void check_window(const EigenvalueTable& table, std::size_t x, std::uint64_t h) {
  if (x < 1) throw InputError("shifted sums require X >= 1");
  if (2 * x + h > table.limit) {
    throw InputError("window 2X + h = " + std::to_string(2 * x + h) + " exceeds table limit " +
                     std::to_string(table.limit));
  }
}

// sum_{n=first}^{last} coeff(n) e(alpha n), phase recomputed at each block start.
template <typename Coeff>
std::complex<double> twisted_sum(Coeff coeff, double alpha, std::size_t first, std::size_t last) {
  if (last < first) return {0.0, 0.0};
  const std::complex<double> step = unit_phase(static_cast<long double>(alpha));
  std::vector<std::complex<double>> partials;
  for (std::size_t start = first; start <= last; start += kPhaseBlock) {
    const std::size_t end = std::min(last, start + kPhaseBlock - 1);
    std::complex<double> phase = unit_phase(static_cast<long double>(start) * static_cast<long double>(alpha));
    CompensatedSum re;
    CompensatedSum im;
    for (std::size_t n = start; n <= end; ++n) {
      const double c = coeff(n);
      re.add(c * phase.real());
      im.add(c * phase.imag());
      phase *= step;
    }
    partials.emplace_back(re.value(), im.value());
  }
  return pairwise_sum(partials);
}

double quantile_sorted(std::span<const double> sorted, double level) {
  if (sorted.empty()) return 0.0;
  const double pos = level * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

}  // namespace

std::string to_string(ExpSumKind kind) {
  return kind == ExpSumKind::LambdaSquare ? "lambda_sq" : "miller";
}

double shifted_sum(const EigenvalueTable& table, std::size_t x, std::uint64_t h) {
  check_window(table, x, h);
  CompensatedSum acc;
  for (std::size_t n = x; n <= 2 * x; ++n) {
    const double a = table.values[n];
    const double b = table.values[n + h];
    acc.add(a * a * (b * b));
  }
  return acc.value();
}

std::vector<ShiftedSumRecord> shifted_sum_batch(const EigenvalueTable& table, std::size_t x, std::uint64_t h_max,
                                                const SingularSeries& series, std::size_t q_max,
                                                unsigned threads) {
  check_window(table, x, h_max);
  const std::vector<double> sq = squares(table, 2 * x + h_max);
  std::vector<ShiftedSumRecord> out(h_max);
  parallel_for(h_max, threads, [&](std::size_t i) {
    const std::uint64_t h = i + 1;
    ShiftedSumRecord& r = out[i];
    r.x = x;
    r.h = h;
    r.sum = shifted_kernel(sq, x, h);
    r.bh = series.bh(h, q_max).value;
    r.norm_error = (r.sum - r.bh * static_cast<double>(x)) / static_cast<double>(x);
  });
  return out;
}

double shifted_sum_total(const EigenvalueTable& table, std::size_t x, std::uint64_t h_max) {
  check_window(table, x, h_max);
  const std::size_t top = 2 * x + h_max;
  std::vector<double> prefix(top + 1, 0.0);
  CompensatedSum run;
  for (std::size_t n = 1; n <= top; ++n) {
    run.add(table.values[n] * table.values[n]);
    prefix[n] = run.value();
  }
  CompensatedSum acc;
  for (std::size_t n = x; n <= 2 * x; ++n) {
    const double a = table.values[n];
    acc.add(a * a * (prefix[n + h_max] - prefix[n]));
  }
  return acc.value();
}

std::complex<double> unit_phase(long double theta) {
  const long double r = theta - std::floor(theta);
  const long double angle = 2.0L * std::numbers::pi_v<long double> * r;
  return {static_cast<double>(std::cos(angle)), static_cast<double>(std::sin(angle))};
}

ExpSumSample exp_sum_lambda_sq(const EigenvalueTable& table, double alpha, std::size_t x) {
  check_window(table, x, 0);
  const auto& v = table.values;
  ExpSumSample s;
  s.alpha = alpha;
  s.x = x;
  s.kind = ExpSumKind::LambdaSquare;
  s.value = twisted_sum([&](std::size_t n) { return v[n] * v[n]; }, alpha, x, 2 * x);
  return s;
}

ExpSumSample miller_sum(const SquareTable& square, double alpha, std::size_t x) {
  if (x > square.limit) {
    throw InputError("miller_sum: X = " + std::to_string(x) + " exceeds square table limit " +
                     std::to_string(square.limit));
  }
  const auto& v = square.values;
  ExpSumSample s;
  s.alpha = alpha;
  s.x = x;
  s.kind = ExpSumKind::Miller;
  s.value = twisted_sum([&](std::size_t n) { return v[n]; }, alpha, 1, x);
  return s;
}

std::vector<ExpSumSample> exp_sum_batch(const EigenvalueTable& table, std::span<const double> alphas,
                                        std::size_t x, unsigned threads) {
  std::vector<ExpSumSample> out(alphas.size());
  parallel_for(alphas.size(), threads, [&](std::size_t i) { out[i] = exp_sum_lambda_sq(table, alphas[i], x); });
  return out;
}

std::vector<ExpSumSample> miller_sum_batch(const SquareTable& square, std::span<const double> alphas,
                                           std::size_t x, unsigned threads) {
  std::vector<ExpSumSample> out(alphas.size());
  parallel_for(alphas.size(), threads, [&](std::size_t i) { out[i] = miller_sum(square, alphas[i], x); });
  return out;
}

std::vector<double> alpha_set(std::uint64_t seed, std::size_t grid, std::size_t random_count) {
  std::vector<double> out;
  out.reserve(grid + random_count);
  for (std::size_t k = 0; k < grid; ++k) out.push_back(static_cast<double>(k) / static_cast<double>(grid));
  // Raw engine bits rather than a std:: distribution, whose output is
  // implementation-defined.
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < random_count; ++i) out.push_back(static_cast<double>(rng() >> 11) * 0x1.0p-53);
  return out;
}

SlopeFit log_log_slope(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size() || xs.size() < 2) throw InputError("log_log_slope needs >= 2 paired points");
  double mx = 0.0;
  double my = 0.0;
  const auto n = static_cast<double>(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += std::log(xs[i]);
    my += std::log(ys[i]);
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = std::log(xs[i]) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(ys[i]) - my);
  }
  if (sxx == 0.0) throw InputError("log_log_slope: all x equal");
  SlopeFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  return fit;
}

MillerExponent miller_exponent(const SquareTable& square, std::span<const std::size_t> ladder,
                               std::span<const double> alphas, unsigned threads) {
  MillerExponent out;
  out.ladder.assign(ladder.begin(), ladder.end());
  std::vector<double> xs;
  for (std::size_t x : ladder) {
    double best = 0.0;
    for (const auto& s : miller_sum_batch(square, alphas, x, threads)) best = std::max(best, std::abs(s.value));
    out.max_abs.push_back(best);
    xs.push_back(static_cast<double>(x));
  }
  out.fit = log_log_slope(xs, out.max_abs);
  return out;
}

std::vector<std::size_t> log_grid(std::size_t cap, std::size_t points, double span) {
  if (points < 2) throw InputError("log_grid needs at least 2 points");
  std::vector<std::size_t> grid;
  for (std::size_t i = 0; i < points; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(points - 1);
    const auto x = static_cast<std::size_t>(std::llround(static_cast<double>(cap) / span * std::pow(span, t)));
    if (grid.empty() || x > grid.back()) grid.push_back(std::max<std::size_t>(x, 1));
  }
  return grid;
}

FourthMomentFit fourth_moment_fit(const EigenvalueTable& table, std::span<const std::size_t> grid) {
  std::vector<std::size_t> xs(grid.begin(), grid.end());
  std::ranges::sort(xs);
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  if (xs.size() < 2 || xs.front() < 2) throw InputError("fourth_moment_fit: degenerate grid");
  if (xs.back() > table.limit) throw InputError("fourth_moment_fit: grid exceeds table");

  std::vector<double> ys;
  CompensatedSum acc;
  std::size_t n = 1;
  for (std::size_t x : xs) {
    for (; n <= x; ++n) {
      const double s = table.values[n] * table.values[n];
      acc.add(s * s);
    }
    ys.push_back(acc.value());
  }

  // Columns scaled by the cap so the normal equations stay well conditioned.
  const double scale = static_cast<double>(xs.back());
  double a11 = 0, a12 = 0, a22 = 0, b1 = 0, b2 = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double x = static_cast<double>(xs[i]);
    const double u = x * std::log(x) / scale;
    const double v = x / scale;
    a11 += u * u;
    a12 += u * v;
    a22 += v * v;
    b1 += u * ys[i];
    b2 += v * ys[i];
  }
  const double det = a11 * a22 - a12 * a12;
  if (!(std::abs(det) > 1e-12 * a11 * a22)) throw InputError("fourth_moment_fit: degenerate grid");
  FourthMomentFit fit;
  fit.c2 = (b1 * a22 - b2 * a12) / det / scale;
  fit.d = (a11 * b2 - a12 * b1) / det / scale;

  double rr = 0.0;
  double yy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double x = static_cast<double>(xs[i]);
    const double r = ys[i] - (fit.c2 * x * std::log(x) + fit.d * x);
    rr += r * r;
    yy += ys[i] * ys[i];
  }
  fit.residual_norm = std::sqrt(rr / yy);
  const double x = static_cast<double>(xs.back());
  fit.residual_at_cap = std::abs(ys.back() - (fit.c2 * x * std::log(x) + fit.d * x)) / ys.back();
  return fit;
}

ShiuReport shiu_envelope_check(std::span<const ShiftedSumRecord> records) {
  if (records.empty()) throw InputError("shiu_envelope_check: no records");
  ShiuReport r;
  for (const auto& rec : records) {
    const double ll = std::log(std::log(static_cast<double>(rec.h) + 16.0));
    const double ratio = rec.sum / (static_cast<double>(rec.x) * std::pow(ll, 16.0));
    r.ratios.push_back(ratio);
    if (r.witness_h == 0 || ratio > r.max_ratio) {
      r.max_ratio = ratio;
      r.witness_h = rec.h;
    }
  }
  return r;
}

std::vector<double> default_thresholds(std::size_t x) {
  const double xd = static_cast<double>(x);
  const double lx = std::log(xd);
  return {std::pow(xd, -0.25), 1.0 / (lx * lx)};
}

ErrorReport error_statistics(std::span<const ShiftedSumRecord> records, std::span<const double> thresholds) {
  ErrorReport rep;
  rep.h_count = records.size();
  rep.x = records.empty() ? 0 : records.front().x;
  rep.quantile_levels.assign(std::begin(kDefaultQuantileLevels), std::end(kDefaultQuantileLevels));
  rep.thresholds.assign(thresholds.begin(), thresholds.end());

  std::vector<double> errs;
  CompensatedSum l1;
  for (const auto& r : records) {
    errs.push_back(std::abs(r.norm_error));
    l1.add(std::abs(r.sum - r.bh * static_cast<double>(r.x)));
  }
  std::ranges::sort(errs);
  for (double level : rep.quantile_levels) rep.quantiles.push_back(quantile_sorted(errs, level));
  for (double t : rep.thresholds) {
    rep.counts.push_back(static_cast<std::size_t>(std::ranges::count_if(errs, [t](double e) { return e > t; })));
  }
  if (!records.empty() && rep.x > 0) {
    rep.l1_average = l1.value() / (static_cast<double>(records.size()) * static_cast<double>(rep.x));
  }
  return rep;
}

double median_abs_error(std::span<const ShiftedSumRecord> records) {
  std::vector<double> errs;
  for (const auto& r : records) errs.push_back(std::abs(r.norm_error));
  std::ranges::sort(errs);
  return quantile_sorted(errs, 0.5);
}

}  // namespace hecke
