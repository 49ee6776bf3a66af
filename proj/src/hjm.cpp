#include "levyts/hjm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "levyts/quad.hpp"

namespace levyts {

hjm_volatility hjm_volatility::vasicek(double mean_reversion, double sigma_hat) {
  if (!(mean_reversion > 0.0)) throw feasibility_error("vasicek mean reversion must be > 0");
  if (sigma_hat < 0.0) throw feasibility_error("sigma_hat must be >= 0");
  hjm_volatility v;
  v.kind_ = kind::vasicek;
  v.a_ = mean_reversion;
  v.sigma_hat_ = sigma_hat;
  v.zero_ = sigma_hat == 0.0;
  return v;
}

hjm_volatility hjm_volatility::ho_lee(double sigma_hat) {
  if (sigma_hat < 0.0) throw feasibility_error("sigma_hat must be >= 0");
  hjm_volatility v;
  v.kind_ = kind::ho_lee;
  v.sigma_hat_ = sigma_hat;
  v.zero_ = sigma_hat == 0.0;
  return v;
}

hjm_volatility hjm_volatility::from_grid(std::vector<double> offsets, std::vector<double> values) {
  if (offsets.size() != values.size() || offsets.size() < 2) {
    throw feasibility_error("volatility grid needs matching vectors of length >= 2");
  }
  if (offsets.front() != 0.0) throw feasibility_error("volatility grid must start at offset 0");
  for (std::size_t i = 0; i < offsets.size(); ++i) {
    if (i > 0 && !(offsets[i] > offsets[i - 1])) {
      throw feasibility_error("volatility grid offsets must increase");
    }
    if (values[i] < 0.0) throw feasibility_error("volatility grid values must be >= 0");
  }
  hjm_volatility v;
  v.kind_ = kind::grid;
  v.offsets_ = std::move(offsets);
  v.values_ = std::move(values);
  v.cum_.assign(v.offsets_.size(), 0.0);
  bool all_zero = true;
  for (std::size_t i = 1; i < v.offsets_.size(); ++i) {
    v.cum_[i] = v.cum_[i - 1] + 0.5 * (v.values_[i] + v.values_[i - 1]) *
                                    (v.offsets_[i] - v.offsets_[i - 1]);
    if (v.values_[i] != 0.0 || v.values_[i - 1] != 0.0) all_zero = false;
  }
  v.zero_ = all_zero;
  return v;
}

double hjm_volatility::sigma(double s, double T) const {
  if (s > T) return 0.0;
  const double v = T - s;
  switch (kind_) {
    case kind::vasicek:
      return sigma_hat_ * std::exp(-a_ * v);
    case kind::ho_lee:
      return sigma_hat_;
    case kind::grid: {
      if (v >= offsets_.back()) return values_.back();
      auto it = std::upper_bound(offsets_.begin(), offsets_.end(), v);
      const std::size_t hi = static_cast<std::size_t>(it - offsets_.begin());
      const double w = (v - offsets_[hi - 1]) / (offsets_[hi] - offsets_[hi - 1]);
      return values_[hi - 1] * (1.0 - w) + values_[hi] * w;
    }
  }
  return 0.0;
}

double hjm_volatility::big_sigma(double ttm) const {
  if (ttm <= 0.0) return 0.0;
  switch (kind_) {
    case kind::vasicek:
      return sigma_hat_ / a_ * (1.0 - std::exp(-a_ * ttm));
    case kind::ho_lee:
      return sigma_hat_ * ttm;
    case kind::grid: {
      if (ttm >= offsets_.back()) {
        return cum_.back() + values_.back() * (ttm - offsets_.back());
      }
      auto it = std::upper_bound(offsets_.begin(), offsets_.end(), ttm);
      const std::size_t hi = static_cast<std::size_t>(it - offsets_.begin());
      const double h = ttm - offsets_[hi - 1];
      const double slope = (values_[hi] - values_[hi - 1]) / (offsets_[hi] - offsets_[hi - 1]);
      return cum_[hi - 1] + values_[hi - 1] * h + 0.5 * slope * h * h;
    }
  }
  return 0.0;
}

double hjm_volatility::integrated(double s, double T) const {
  if (s >= T) return 0.0;
  return big_sigma(T - s);
}

double hjm_volatility::sup_integrated_over(double s_lo, double s_hi, double T) const {
  if (s_lo > T) return 0.0;
  (void)s_hi;  // Sigma is nonincreasing in s, the sup sits at the window start
  return big_sigma(T - s_lo);
}

hjm_model::hjm_model(levy_model driver, hjm_volatility vol, discount_curve curve, double horizon)
    : driver_(std::move(driver)), vol_(std::move(vol)), curve_(std::move(curve)),
      horizon_(horizon) {
  if (!(horizon_ > 0.0)) throw feasibility_error("model horizon must be positive");
  const double sup = vol_.sup_integrated(horizon_);
  if (sup > driver_.em().M) {
    std::ostringstream os;
    os << "volatility bound violated: sup Sigma = " << sup << " exceeds driver M = "
       << driver_.em().M;
    throw feasibility_error(os.str());
  }
}

double hjm_model::drift(double s, double T) const {
  return driver_.cumulant(s, complex(vol_.integrated(s, T))).real();
}

void hjm_model::check_spec(const composition_spec& spec) const {
  if (spec.tenor.settlement() > horizon_ + 1e-12) {
    throw feasibility_error("composition settles beyond the model horizon");
  }
}

namespace {

// breakpoints of the composition integrands on [0, last fixing]
std::vector<double> composition_breaks(const tenor_structure& tenor, const levy_model& driver) {
  std::vector<double> b = tenor.fixings();
  const double upto = tenor.last_fixing();
  for (int i = 1; i <= tenor.periods() + 1; ++i) {
    if (tenor.date(i) < upto) b.push_back(tenor.date(i));
  }
  for (double t : driver.breakpoints()) {
    if (t < upto) b.push_back(t);
  }
  return b;
}

}  // namespace

hjm_model::composition_terms hjm_model::composition(const composition_spec& spec,
                                                    double quad_tol) const {
  check_spec(spec);
  const tenor_structure& tenor = spec.tenor;
  const int n = tenor.periods();
  const double t_star = tenor.settlement();

  composition_terms out;
  out.log_z = std::log(curve_(tenor.first_date()) / curve_(t_star));
  out.last_fixing = tenor.last_fixing();
  out.breakpoints = composition_breaks(tenor, driver_);

  out.loading = [this, tenor, n](double s) {
    double acc = 0.0;
    for (int i = 1; i <= n; ++i) {
      if (s > tenor.fixing(i)) continue;  // fixed periods no longer load on L
      acc += vol_.integrated(s, tenor.date(i), tenor.date(i + 1));
    }
    return -acc;
  };

  auto drift_sum = [&](double s) {
    double acc = 0.0;
    for (int i = 1; i <= n; ++i) {
      if (s > tenor.fixing(i)) continue;
      acc += drift(s, tenor.date(i), tenor.date(i + 1));
    }
    return acc;
  };
  const auto integral =
      integrate_or_throw(drift_sum, 0.0, out.last_fixing, out.breakpoints, quad_tol);
  out.constant = out.log_z + integral.value;
  return out;
}

hjm_strip_bounds hjm_model::strip_bounds(const composition_spec& spec) const {
  check_spec(spec);
  if (vol_.is_zero()) {
    // degenerate composition: H is constant and the MGF is entire
    const double inf = std::numeric_limits<double>::infinity();
    return hjm_strip_bounds{0.0, 0.0, -inf, inf};
  }
  const tenor_structure& tenor = spec.tenor;
  const int n = tenor.periods();
  const double t_star = tenor.settlement();

  const double m_prime = vol_.sup_integrated(t_star);
  double m_dp = 0.0;
  for (int j = 0; j <= n; ++j) {
    const double window_lo = (j == 0) ? 0.0 : tenor.fixing(j);
    const double window_hi = (j == n) ? t_star : tenor.fixing(j + 1);
    m_dp = std::max(m_dp, vol_.sup_integrated_over(window_lo, window_hi, tenor.date(j + 1)));
  }
  return strip_bounds(spec, m_prime, m_dp);
}

hjm_strip_bounds hjm_model::strip_bounds(const composition_spec& spec, double m_prime,
                                         double m_double_prime) const {
  check_spec(spec);
  const int n = spec.tenor.periods();
  const double M = driver_.em().M;
  std::ostringstream os;
  if (!(m_double_prime > 0.0) || !(m_double_prime < m_prime) || !(m_prime < M)) {
    os << "strip bounds need 0 < M'' < M' < M, got M'' = " << m_double_prime
       << ", M' = " << m_prime << ", M = " << M;
    throw feasibility_error(os.str());
  }
  if (!(M / m_double_prime > n + 1)) {
    os << "composition infeasible for this driver: M/M'' = " << M / m_double_prime
       << " must exceed N+1 = " << n + 1
       << "; supply a driver with larger M or a shorter composition";
    throw feasibility_error(os.str());
  }
  const double width = (M - m_double_prime * (n + 1)) / (m_prime + m_double_prime * (n + 1));
  return hjm_strip_bounds{m_prime, m_double_prime, 1.0 - width, 1.0 + width};
}

complex hjm_model::mgf(const composition_spec& spec, const hjm_strip_bounds& bounds, complex z,
                       double quad_tol) const {
  check_spec(spec);
  if (z.real() < bounds.lo - 1e-12 || z.real() > bounds.hi + 1e-12) {
    throw strip_error(z.real(), bounds.lo, bounds.hi,
                      "MGF argument outside the admissible interval");
  }
  const tenor_structure& tenor = spec.tenor;
  const int n = tenor.periods();
  const double t_star = tenor.settlement();
  const double log_z = std::log(curve_(tenor.first_date()) / curve_(t_star));

  auto integrand = [&](double s) -> complex {
    const double sig_star = vol_.integrated(s, t_star);
    double sum_sigma = 0.0;
    complex sum_drift = 0.0;
    for (int i = 1; i <= n; ++i) {
      if (s > tenor.fixing(i)) continue;
      sum_sigma += vol_.integrated(s, tenor.date(i), tenor.date(i + 1));
      sum_drift += driver_.cumulant(s, complex(vol_.integrated(s, tenor.date(i + 1)))) -
                   driver_.cumulant(s, complex(vol_.integrated(s, tenor.date(i))));
    }
    return z * sum_drift - driver_.cumulant(s, complex(sig_star)) +
           driver_.cumulant(s, complex(sig_star) - z * sum_sigma);
  };
  // the integrand vanishes identically past the last fixing
  const auto integral = integrate_or_throw(integrand, 0.0, tenor.last_fixing(),
                                           composition_breaks(tenor, driver_), quad_tol);
  return std::exp(z * log_z + integral.value);
}

double hjm_model::deterministic_value(const composition_spec& spec) const {
  check_spec(spec);
  return curve_(spec.tenor.first_date()) / curve_(spec.tenor.settlement());
}

}  // namespace levyts
