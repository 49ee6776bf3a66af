#pragma once

#include <vector>

#include "levyts/curve.hpp"
#include "levyts/levy.hpp"
#include "levyts/tenor.hpp"

namespace levyts {

/// Deterministic volatility of one forward price F(., T_i, T_{i+1});
/// evaluates to 0 past its maturity.
class eta_function {
 public:
  static eta_function constant(double value);
  /// scale * exp(-rate * (maturity - s))
  static eta_function exp_decay(double scale, double rate);
  /// piecewise linear in s, clamped outside the knot range
  static eta_function table(std::vector<double> times, std::vector<double> values);

  double operator()(double s, double maturity) const;
  std::vector<double> knots() const { return times_; }

 private:
  enum class kind { constant, exp_decay, table };
  eta_function() = default;

  kind kind_ = kind::constant;
  double value_ = 0.0;
  double rate_ = 0.0;
  std::vector<double> times_;
  std::vector<double> values_;
};

/// Admissible strip for the composition MGF in the forward-price model.
/// The cap theorem uses (1, hi]; puts use the mirrored negative part.
struct fp_strip_bound {
  double m_prime;  // sup_s |sum_k eta(s,T_k)|
  double lo;       // -M/M'
  double hi;       // +M/M'
};

/// Discrete-tenor forward-price model under the terminal forward measure.
/// The driver carries characteristics (0, c, lambda): zero drift, so each
/// forward price is a martingale under its own forward measure once the
/// backward-induction drifts below are added. Immutable.
class forward_price_model {
 public:
  forward_price_model(levy_model terminal_driver, tenor_structure tenor,
                      std::vector<eta_function> eta_per_period, discount_curve curve);

  const levy_model& driver() const { return driver_; }
  const tenor_structure& tenor() const { return tenor_; }
  const discount_curve& curve() const { return curve_; }

  double initial_forward(int j) const;  // F(0, T*_j, T*_{j-1})

  /// eta(s, T*_j) in the reversed indexing, j in [1, N].
  double eta(double s, int j) const;
  /// sum_{k=1}^{j-1} eta(s, T*_k); the cumulative exponential tilt.
  double cumulative_eta_below(double s, int j) const;

  /// Drift of F(., T*_j, T*_{j-1}) under its own forward measure.
  double forward_drift(double s, int j) const;
  /// Drift of the same forward lifted to the terminal measure.
  double terminal_drift(double s, int j) const;

  /// Jump-measure density between P_{T*_{j-1}} and P_{T*}: exp(x * tilt).
  double jump_tilt(double s, double x, int j) const;
  /// Brownian drift shift between the same measures.
  double brownian_shift(double s, int j) const;

  fp_strip_bound strip_bound() const;

  /// Deterministic part of the log composition value.
  double composition_constant(const composition_spec& spec, double quad_tol = 1e-12) const;
  /// MGF of the log composition value under the terminal measure.
  complex mgf(const composition_spec& spec, const fp_strip_bound& bound, complex z,
              double quad_tol = 1e-10) const;

  bool vol_is_zero() const { return zero_vol_; }
  double deterministic_value(const composition_spec& spec) const;

  std::vector<double> eta_knots() const;

 private:
  levy_model driver_;
  tenor_structure tenor_;
  std::vector<eta_function> eta_;  // calendar order, index i-1 for maturity T_i
  discount_curve curve_;
  double m_prime_ = 0.0;
  bool zero_vol_ = false;

  void check_spec(const composition_spec& spec) const;
};

}  // namespace levyts
