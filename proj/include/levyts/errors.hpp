#pragma once

#include <stdexcept>
#include <string>

namespace levyts {

/// A complex argument left the strip on which a cumulant or moment
/// generating function is defined. Carries the violated interval.
class strip_error : public std::domain_error {
 public:
  strip_error(double value, double lo, double hi, const std::string& what_arg)
      : std::domain_error(what_arg), value_(value), lo_(lo), hi_(hi) {}

  double value() const noexcept { return value_; }
  double lower() const noexcept { return lo_; }
  double upper() const noexcept { return hi_; }

 private:
  double value_;
  double lo_;
  double hi_;
};

/// A structural requirement on model or product parameters cannot be met
/// (e.g. the exponential-moment bound is too small for the composition).
class feasibility_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A numerical routine failed to reach its target (quadrature did not
/// converge, implied-vol inversion has no solution, ...).
class numeric_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid or inconsistent run configuration.
class config_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace levyts
