#pragma once

#include <vector>

namespace levyts {

/// Initial discount factors B(0,T), log-linearly interpolated between
/// pillars. Pillars must be positive and nonincreasing.
class discount_curve {
 public:
  discount_curve(std::vector<double> times, std::vector<double> discounts);

  /// Flat continuously compounded curve, B(0,t) = exp(-rate*t).
  static discount_curve flat(double rate, double horizon);

  double operator()(double t) const;  // B(0,t)
  double horizon() const { return times_.back(); }

 private:
  std::vector<double> times_;
  std::vector<double> log_discounts_;
};

}  // namespace levyts
