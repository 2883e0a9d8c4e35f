#pragma once

#include <cmath>

namespace schrodet {

/// Neumaier-compensated accumulator. Keeps residual comparisons at the 1e-10
/// level honest for sums with ~4096 terms.
class KahanSum {
 public:
  void add(double v) noexcept {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      carry_ += (sum_ - t) + v;
    } else {
      carry_ += (v - t) + sum_;
    }
    sum_ = t;
  }

  KahanSum& operator+=(double v) noexcept {
    add(v);
    return *this;
  }

  double value() const noexcept { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

}  // namespace schrodet
