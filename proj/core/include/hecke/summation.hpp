#pragma once

#include <cmath>
#include <complex>
#include <span>
#include <vector>

namespace hecke {

// Neumaier's variant of Kahan summation. The correction term picks up the
// low-order bits lost when |addend| > |sum| as well as the reverse case.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }

  CompensatedSum& operator+=(double x) {
    add(x);
    return *this;
  }

  [[nodiscard]] double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

inline double compensated_sum(std::span<const double> xs) {
  CompensatedSum acc;
  for (double x : xs) acc.add(x);
  return acc.value();
}

// Pairwise reduction of block partials. The combination tree depends only on
// the number of partials, never on how they were produced.
inline std::complex<double> pairwise_sum(std::span<const std::complex<double>> xs) {
  if (xs.empty()) return {0.0, 0.0};
  if (xs.size() == 1) return xs[0];
  const std::size_t half = xs.size() / 2;
  return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

}  // namespace hecke
