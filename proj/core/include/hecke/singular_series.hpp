#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "hecke/arith.hpp"
#include "hecke/hecke_table.hpp"

namespace hecke {

struct ConstantEstimate {
  double value = 0.0;
  double uncertainty = 0.0;
};

// Density c of sum_{n<=X} lambda(n)^2 ~ c X, from two independent routes.
struct RankinConstant {
  double euler_estimate = 0.0;
  double empirical_estimate = 0.0;
  double chosen = 0.0;       // the regression estimate
  double uncertainty = 0.0;  // euler uncertainty + regression spread

  [[nodiscard]] bool consistent() const;
};

// Local Euler factor (1 - 1/p)^{-1} (1 - (lambda_p^2 - 2)/p + 1/p^2)^{-1}.
double rankin_euler_factor(double lambda_p, std::uint64_t p);

// L(sym^2 f, 1) / zeta(2) as a partial product over p <= prime_cutoff,
// accumulated in log space. The uncertainty is the largest excursion of the
// partial products over the last decade of primes (P/10, P].
ConstantEstimate rankin_constant_euler(const EigenvalueTable& table, std::size_t prime_cutoff);

// sum_{from <= n <= to} lambda(n)^2 with compensated summation.
double lambda_square_sum(const EigenvalueTable& table, std::size_t from, std::size_t to);

// Least-squares slope of sum_{n<=X} lambda(n)^2 = c X through the origin.
// The uncertainty is max_i |S(X_i)/X_i - c| over the grid.
ConstantEstimate rankin_constant_empirical(const EigenvalueTable& table, std::span<const std::size_t> grid);

// {cap/points, 2 cap/points, ..., cap}.
std::vector<std::size_t> linear_grid(std::size_t cap, std::size_t points = 10);

RankinConstant rankin_constant(const EigenvalueTable& table, std::size_t prime_cutoff,
                               std::span<const std::size_t> grid);

struct LocalFactorW {
  std::uint64_t q0 = 1;
  std::uint64_t q1 = 1;
  double value = 0.0;
  double truncation_error = 0.0;
};

// Residue data of sum_{(n,q1)=1} lambda(q0 n)^2 n^{-s} at s = 1:
//   c1f prod_{p|q} ((p-1)/(p+1)) (1 - (lambda(p)^2 - 2)/p + 1/p^2) prod_{p^l || q0} F_p
// with F_p = sum_{j>=0} lambda(p^{l+j})^2 p^{-j}, or F_p = lambda(p^l)^2 when p
// also divides q1. The series is cut where its Deligne-bound tail drops
// below tol / (omega(q) * scale); depth_scale multiplies the chosen depth.
LocalFactorW local_factor_w(std::uint64_t q0, std::uint64_t q1, double c1f, const EigenvalueTable& table,
                            double tol, unsigned depth_scale = 1);

struct DqCoefficient {
  std::uint64_t q = 1;
  double value = 0.0;
};

// D_q = sum_{q = q0 q1, mu(q1) != 0} mu(q1) / (phi(q1) q0) * w(q0, q1).
DqCoefficient dq_coefficient(std::uint64_t q, double c1f, const EigenvalueTable& table, double tol,
                             unsigned depth_scale = 1);

// Number of factorizations q = q0 q1 entering D_q (those with q1 squarefree).
std::size_t dq_term_count(std::uint64_t q);

struct SingularSeriesResult {
  std::uint64_t h = 1;
  double value = 0.0;
  std::size_t q_max = 0;
  double tail_bound = 0.0;
  std::vector<double> terms;  // c_q(h) D_q^2 for q = 1..q_max, when requested
};

// D_q for q <= capacity, computed once, plus the fitted tail envelope
// |D_q| <= C q^{-0.9}. C is 4x the largest |D_q| q^{0.9} seen for
// q <= min(capacity, 1000), so tail bounds are empirical, not proven.
class SingularSeries {
 public:
  static constexpr double kEnvelopeExponent = 0.9;
  static constexpr double kEnvelopeSafety = 4.0;
  static constexpr std::size_t kEnvelopeFitLimit = 1000;

  SingularSeries(double c1f, const EigenvalueTable& table, std::size_t capacity, double tol = 1e-13,
                 unsigned threads = 1, unsigned depth_scale = 1);

  [[nodiscard]] double c1f() const { return c1f_; }
  [[nodiscard]] std::size_t capacity() const { return capacity_; }
  [[nodiscard]] double dq(std::size_t q) const;
  [[nodiscard]] std::span<const double> dq_values() const { return {dq_.data() + 1, capacity_}; }
  [[nodiscard]] double envelope_constant() const { return envelope_c_; }
  [[nodiscard]] double envelope(std::uint64_t q) const;

  // c_q(h) from the closed form with tabulated mu and phi.
  [[nodiscard]] std::int64_t ramanujan(std::uint32_t q, std::uint64_t h) const;

  // Bound on |sum_{q > q_max} c_q(h) D_q^2| from the envelope:
  //   sum_{d|h} d sum_{q' > q_max/d} envelope(d q')^2.
  [[nodiscard]] double tail_bound(std::uint64_t h, std::size_t q_max) const;

  [[nodiscard]] SingularSeriesResult bh(std::uint64_t h, std::size_t q_max, bool keep_terms = false) const;

  // Doubles q_max from 16 until tail_bound < tol; InputError if that would
  // need more than capacity().
  [[nodiscard]] SingularSeriesResult bh_adaptive(std::uint64_t h, double tol, bool keep_terms = false) const;

  [[nodiscard]] std::vector<SingularSeriesResult> bh_batch(std::uint64_t h_max, std::size_t q_max,
                                                           unsigned threads = 1) const;

 private:
  double c1f_;
  std::size_t capacity_;
  std::vector<double> dq_;
  std::vector<int> mu_;
  std::vector<std::uint64_t> phi_;
  double envelope_c_ = 0.0;
};

// One-shot B_h with q_max fixed.
SingularSeriesResult singular_series_bh(std::uint64_t h, double c1f, const EigenvalueTable& table,
                                        std::size_t q_max, double tol = 1e-13);

// Largest |D_q| (log(q+2))^{-7} q / d_2(q) over 1 <= q <= q_max: the constant
// that makes the D_q bound shape hold on that range.
double dq_bound_shape_constant(const SingularSeries& series, std::size_t q_max);

}  // namespace hecke
