#include "levyts/forward_price.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "levyts/quad.hpp"

namespace levyts {

eta_function eta_function::constant(double value) {
  eta_function e;
  e.kind_ = kind::constant;
  e.value_ = value;
  return e;
}

eta_function eta_function::exp_decay(double scale, double rate) {
  if (rate < 0.0) throw feasibility_error("eta decay rate must be >= 0");
  eta_function e;
  e.kind_ = kind::exp_decay;
  e.value_ = scale;
  e.rate_ = rate;
  return e;
}

eta_function eta_function::table(std::vector<double> times, std::vector<double> values) {
  if (times.size() != values.size() || times.size() < 2) {
    throw feasibility_error("eta table needs matching vectors of length >= 2");
  }
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (!(times[i] > times[i - 1])) throw feasibility_error("eta table times must increase");
  }
  eta_function e;
  e.kind_ = kind::table;
  e.times_ = std::move(times);
  e.values_ = std::move(values);
  return e;
}

double eta_function::operator()(double s, double maturity) const {
  if (s > maturity) return 0.0;
  switch (kind_) {
    case kind::constant:
      return value_;
    case kind::exp_decay:
      return value_ * std::exp(-rate_ * (maturity - s));
    case kind::table: {
      if (s <= times_.front()) return values_.front();
      if (s >= times_.back()) return values_.back();
      auto it = std::upper_bound(times_.begin(), times_.end(), s);
      const std::size_t hi = static_cast<std::size_t>(it - times_.begin());
      const double w = (s - times_[hi - 1]) / (times_[hi] - times_[hi - 1]);
      return values_[hi - 1] * (1.0 - w) + values_[hi] * w;
    }
  }
  return 0.0;
}

forward_price_model::forward_price_model(levy_model terminal_driver, tenor_structure tenor,
                                         std::vector<eta_function> eta_per_period,
                                         discount_curve curve)
    : driver_(std::move(terminal_driver)), tenor_(std::move(tenor)),
      eta_(std::move(eta_per_period)), curve_(std::move(curve)) {
  if (!driver_.is_centered()) {
    throw feasibility_error("the terminal-measure driver must have zero drift characteristic");
  }
  const int n = tenor_.periods();
  if (static_cast<int>(eta_.size()) != n) {
    throw feasibility_error("one eta function per accrual period expected");
  }
  // cumulative volatility cap: |sum_{k<=i} eta(s,T_k)| <= M for every i,
  // checked on a grid of step 1e-3 * T*
  const double t_star = tenor_.settlement();
  const double step = 1e-3 * t_star;
  const double M = driver_.em().M;
  double worst_full = 0.0;
  bool all_zero = true;
  for (double s = 0.0; s <= t_star + 1e-12; s += step) {
    double partial = 0.0;
    for (int i = 1; i <= n; ++i) {
      partial += eta_[static_cast<std::size_t>(i) - 1](s, tenor_.date(i));
      if (std::abs(partial) > M) {
        std::ostringstream os;
        os << "cumulative forward volatility |sum eta| = " << std::abs(partial)
           << " exceeds driver M = " << M << " at s = " << s;
        throw feasibility_error(os.str());
      }
      if (partial != 0.0) all_zero = false;
    }
    worst_full = std::max(worst_full, std::abs(partial));
  }
  m_prime_ = worst_full;
  zero_vol_ = all_zero;
}

double forward_price_model::initial_forward(int j) const {
  return curve_(tenor_.reversed_date(j)) / curve_(tenor_.reversed_date(j - 1));
}

double forward_price_model::eta(double s, int j) const {
  const int i = tenor_.periods() + 1 - j;  // calendar index
  return eta_[static_cast<std::size_t>(i) - 1](s, tenor_.date(i));
}

double forward_price_model::cumulative_eta_below(double s, int j) const {
  double acc = 0.0;
  for (int k = 1; k < j; ++k) acc += eta(s, k);
  return acc;
}

double forward_price_model::forward_drift(double s, int j) const {
  const double u = eta(s, j);
  if (u == 0.0) return 0.0;
  const double tilt = cumulative_eta_below(s, j);
  const complex theta_up = driver_.cumulant(s, complex(tilt + u));
  const complex theta_at = driver_.cumulant(s, complex(tilt));
  const complex slope = driver_.cumulant_derivative(s, complex(tilt));
  return -(theta_up - theta_at - u * slope).real();
}

double forward_price_model::terminal_drift(double s, int j) const {
  const double u = eta(s, j);
  if (u == 0.0) return 0.0;
  const double tilt = cumulative_eta_below(s, j);
  const complex theta_up = driver_.cumulant(s, complex(tilt + u));
  const complex theta_at = driver_.cumulant(s, complex(tilt));
  return -(theta_up - theta_at).real();
}

double forward_price_model::jump_tilt(double s, double x, int j) const {
  return std::exp(x * cumulative_eta_below(s, j));
}

double forward_price_model::brownian_shift(double s, int j) const {
  return cumulative_eta_below(s, j) * std::sqrt(driver_.diffusion(s));
}

fp_strip_bound forward_price_model::strip_bound() const {
  if (zero_vol_ || m_prime_ == 0.0) {
    const double inf = std::numeric_limits<double>::infinity();
    return fp_strip_bound{0.0, -inf, inf};
  }
  const double hi = driver_.em().M / m_prime_;
  return fp_strip_bound{m_prime_, -hi, hi};
}

void forward_price_model::check_spec(const composition_spec& spec) const {
  const auto& a = spec.tenor.dates();
  const auto& b = tenor_.dates();
  bool same = a.size() == b.size();
  for (std::size_t i = 0; same && i < a.size(); ++i) same = std::abs(a[i] - b[i]) < 1e-12;
  const auto& fa = spec.tenor.fixings();
  const auto& fb = tenor_.fixings();
  for (std::size_t i = 0; same && i < fa.size(); ++i) same = std::abs(fa[i] - fb[i]) < 1e-12;
  if (!same) throw feasibility_error("composition tenor differs from the model tenor");
}

std::vector<double> forward_price_model::eta_knots() const {
  std::vector<double> k;
  for (const auto& e : eta_) {
    for (double t : e.knots()) k.push_back(t);
  }
  return k;
}

namespace {

std::vector<double> fp_breaks(const tenor_structure& tenor, const levy_model& driver,
                              const std::vector<double>& eta_knots) {
  std::vector<double> b = tenor.fixings();
  const double upto = tenor.last_fixing();
  for (int i = 1; i <= tenor.periods() + 1; ++i) {
    if (tenor.date(i) < upto) b.push_back(tenor.date(i));
  }
  for (double t : driver.breakpoints()) {
    if (t < upto) b.push_back(t);
  }
  for (double t : eta_knots) {
    if (t < upto) b.push_back(t);
  }
  return b;
}

}  // namespace

double forward_price_model::composition_constant(const composition_spec& spec,
                                                 double quad_tol) const {
  check_spec(spec);
  const int n = tenor_.periods();
  const double log_z = std::log(curve_(tenor_.first_date()) / curve_(tenor_.settlement()));
  if (zero_vol_) return log_z;

  auto drift_sum = [&](double s) {
    double acc = 0.0;
    for (int j = 1; j <= n && s <= tenor_.reversed_fixing(j); ++j) {
      acc += terminal_drift(s, j);
    }
    return acc;
  };
  const auto integral = integrate_or_throw(drift_sum, 0.0, tenor_.last_fixing(),
                                           fp_breaks(tenor_, driver_, eta_knots()), quad_tol);
  return log_z + integral.value;
}

complex forward_price_model::mgf(const composition_spec& spec, const fp_strip_bound& bound,
                                 complex z, double quad_tol) const {
  check_spec(spec);
  if (z.real() < bound.lo - 1e-12 || z.real() > bound.hi + 1e-12) {
    throw strip_error(z.real(), bound.lo, bound.hi,
                      "MGF argument outside the admissible interval");
  }
  const int n = tenor_.periods();
  const double log_z = std::log(curve_(tenor_.first_date()) / curve_(tenor_.settlement()));
  if (zero_vol_) return std::exp(z * log_z);

  auto integrand = [&](double s) -> complex {
    double sum_b = 0.0;
    double sum_eta = 0.0;
    // reversed fixings decrease in j, so the active set is a prefix
    for (int j = 1; j <= n && s <= tenor_.reversed_fixing(j); ++j) {
      sum_b += terminal_drift(s, j);
      sum_eta += eta(s, j);
    }
    return z * sum_b + driver_.cumulant(s, z * sum_eta);
  };
  const auto integral = integrate_or_throw(integrand, 0.0, tenor_.last_fixing(),
                                           fp_breaks(tenor_, driver_, eta_knots()), quad_tol);
  return std::exp(z * log_z + integral.value);
}

double forward_price_model::deterministic_value(const composition_spec& spec) const {
  check_spec(spec);
  return curve_(tenor_.first_date()) / curve_(tenor_.settlement());
}

}  // namespace levyts
