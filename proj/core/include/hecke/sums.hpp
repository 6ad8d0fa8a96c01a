#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hecke/hecke_table.hpp"
#include "hecke/singular_series.hpp"

namespace hecke {

// One shifted sum over the inclusive window X <= n <= 2X.
struct ShiftedSumRecord {
  std::size_t x = 0;
  std::uint64_t h = 0;
  double sum = 0.0;
  double bh = 0.0;
  double norm_error = 0.0;  // (sum - bh X) / X
};

enum class ExpSumKind { LambdaSquare, Miller };
std::string to_string(ExpSumKind kind);

struct ExpSumSample {
  double alpha = 0.0;
  std::size_t x = 0;
  std::complex<double> value;
  ExpSumKind kind = ExpSumKind::LambdaSquare;
};

struct ErrorReport {
  std::size_t x = 0;
  std::size_t h_count = 0;
  std::vector<double> quantile_levels;
  std::vector<double> quantiles;  // of |norm_error|, at quantile_levels
  std::vector<double> thresholds;
  std::vector<std::size_t> counts;  // #h with |norm_error| > threshold
  double l1_average = 0.0;          // sum_h |sum - bh X| / (H X)
};

// sum_{X<=n<=2X} lambda(n)^2 lambda(n+h)^2; requires 2X + h <= N.
double shifted_sum(const EigenvalueTable& table, std::size_t x, std::uint64_t h);

// Records for h = 1..h_max in order of h; B_h from `series` at q_max.
std::vector<ShiftedSumRecord> shifted_sum_batch(const EigenvalueTable& table, std::size_t x, std::uint64_t h_max,
                                                const SingularSeries& series, std::size_t q_max,
                                                unsigned threads = 1);

// sum_{h<=H} sum_{X<=n<=2X} lambda(n)^2 lambda(n+h)^2 evaluated as
// sum_n lambda(n)^2 sum_{h<=H} lambda(n+h)^2 with prefix sums, O(X + H).
double shifted_sum_total(const EigenvalueTable& table, std::size_t x, std::uint64_t h_max);

// e(theta) = exp(2 pi i theta) with theta reduced mod 1 in extended precision.
std::complex<double> unit_phase(long double theta);

// S_f(alpha) = sum_{X<=n<=2X} lambda(n)^2 e(n alpha); requires 2X <= N.
ExpSumSample exp_sum_lambda_sq(const EigenvalueTable& table, double alpha, std::size_t x);

// sum_{1<=n<=X} lambda(n^2) e(alpha n); requires X <= square.limit.
ExpSumSample miller_sum(const SquareTable& square, double alpha, std::size_t x);

// Evaluates many alphas at once, in input order, parallel over alpha.
std::vector<ExpSumSample> exp_sum_batch(const EigenvalueTable& table, std::span<const double> alphas,
                                        std::size_t x, unsigned threads = 1);
std::vector<ExpSumSample> miller_sum_batch(const SquareTable& square, std::span<const double> alphas,
                                           std::size_t x, unsigned threads = 1);

// 512 equispaced points k/512 plus `random_count` uniform draws from [0, 1).
std::vector<double> alpha_set(std::uint64_t seed, std::size_t grid = 512, std::size_t random_count = 64);

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
};
// Least-squares line through (log x_i, log y_i).
SlopeFit log_log_slope(std::span<const double> xs, std::span<const double> ys);

struct MillerExponent {
  std::vector<std::size_t> ladder;
  std::vector<double> max_abs;  // max over alphas of |Miller sum| at each X
  SlopeFit fit;
};
MillerExponent miller_exponent(const SquareTable& square, std::span<const std::size_t> ladder,
                               std::span<const double> alphas, unsigned threads = 1);

struct FourthMomentFit {
  double c2 = 0.0;  // coefficient of X log X
  double d = 0.0;   // coefficient of X
  double residual_norm = 0.0;      // sqrt(sum r_i^2) / sqrt(sum y_i^2)
  double residual_at_cap = 0.0;    // |y - fit| / y at the largest grid point
};
// Fits sum_{n<=X} lambda(n)^4 ~ c2 X log X + d X over the grid.
FourthMomentFit fourth_moment_fit(const EigenvalueTable& table, std::span<const std::size_t> grid);

// Geometric grid of `points` values from cap / 100 to cap.
std::vector<std::size_t> log_grid(std::size_t cap, std::size_t points = 20, double span = 100.0);

struct ShiuReport {
  double max_ratio = 0.0;  // max sum / (X (log log (h + 16))^16)
  std::uint64_t witness_h = 0;
  std::vector<double> ratios;  // per record, in input order
};
ShiuReport shiu_envelope_check(std::span<const ShiftedSumRecord> records);

// Default thresholds X^{-1/4} and (log X)^{-2}.
std::vector<double> default_thresholds(std::size_t x);
inline constexpr double kDefaultQuantileLevels[] = {0.1, 0.25, 0.5, 0.75, 0.9, 1.0};

ErrorReport error_statistics(std::span<const ShiftedSumRecord> records, std::span<const double> thresholds);

double median_abs_error(std::span<const ShiftedSumRecord> records);

}  // namespace hecke
