#ifndef WEBERBOX_KAHAN_HPP
#define WEBERBOX_KAHAN_HPP

#include <cmath>

namespace weberbox {

// Error-carrying (Kahan-Neumaier) accumulator. The compensation term keeps
// the rounding error of the running sum instead of discarding it, which is
// what makes the heavily cancelling Weber series usable in double precision.
class KahanAccumulator {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }

  [[nodiscard]] double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace weberbox

#endif  // WEBERBOX_KAHAN_HPP
