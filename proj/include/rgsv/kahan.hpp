#pragma once

#include <cmath>

namespace rgsv {

/// Compensated accumulator (Neumaier's variant of Kahan summation).
///
/// The running error term is folded back in by value(), so the result stays
/// accurate even when an addend is larger in magnitude than the partial sum.
class KahanSum {
 public:
  KahanSum() = default;
  explicit KahanSum(double init) : sum_(init) {}

  KahanSum& operator+=(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
    return *this;
  }

  KahanSum& operator-=(double x) { return *this += -x; }

  KahanSum& operator+=(const KahanSum& other) {
    *this += other.sum_;
    *this += other.comp_;
    return *this;
  }

  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace rgsv
