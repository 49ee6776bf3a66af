#include "levyts/curve.hpp"

#include <cmath>

#include "levyts/errors.hpp"

namespace levyts {

discount_curve::discount_curve(std::vector<double> times, std::vector<double> discounts) {
  if (times.size() != discounts.size() || times.empty()) {
    throw feasibility_error("curve needs matching, nonempty pillar vectors");
  }
  if (times.front() > 0.0) {
    times.insert(times.begin(), 0.0);
    discounts.insert(discounts.begin(), 1.0);
  }
  if (times.front() != 0.0 || std::abs(discounts.front() - 1.0) > 1e-12) {
    throw feasibility_error("curve must start at B(0,0) = 1");
  }
  double prev_t = -1.0, prev_b = 2.0;
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!(times[i] > prev_t)) throw feasibility_error("curve pillar times must increase");
    if (!(discounts[i] > 0.0)) throw feasibility_error("discount factors must be positive");
    if (i > 0 && discounts[i] > prev_b + 1e-15) {
      throw feasibility_error("discount factors must be nonincreasing");
    }
    prev_t = times[i];
    prev_b = discounts[i];
  }
  times_ = std::move(times);
  log_discounts_.reserve(times_.size());
  for (double b : discounts) log_discounts_.push_back(std::log(b));
}

discount_curve discount_curve::flat(double rate, double horizon) {
  return discount_curve({0.0, horizon}, {1.0, std::exp(-rate * horizon)});
}

double discount_curve::operator()(double t) const {
  if (t <= 0.0) return 1.0;
  std::size_t hi = 1;
  while (hi + 1 < times_.size() && times_[hi] < t) ++hi;
  const double t0 = times_[hi - 1], t1 = times_[hi];
  const double w = (t - t0) / (t1 - t0);  // extrapolates with the last forward rate
  return std::exp(log_discounts_[hi - 1] * (1.0 - w) + log_discounts_[hi] * w);
}

}  // namespace levyts
