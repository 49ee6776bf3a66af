#pragma once

#include <functional>
#include <vector>

#include "levyts/curve.hpp"
#include "levyts/levy.hpp"
#include "levyts/tenor.hpp"

namespace levyts {

/// Deterministic stationary bond volatility: sigma(s,T) = g(T-s) with the
/// running integral Sigma(s,T) = int_0^{T-s} g. Vasicek and Ho-Lee carry
/// closed forms; the grid kind interpolates g piecewise linearly.
class hjm_volatility {
 public:
  static hjm_volatility vasicek(double mean_reversion, double sigma_hat);
  static hjm_volatility ho_lee(double sigma_hat);
  /// g tabulated at increasing offsets starting at 0; values >= 0.
  static hjm_volatility from_grid(std::vector<double> offsets, std::vector<double> values);

  double sigma(double s, double T) const;       // instantaneous, 0 for s > T
  double integrated(double s, double T) const;  // Sigma(s,T)
  double integrated(double s, double T, double U) const {
    return integrated(s, U) - integrated(s, T);
  }
  /// sup of Sigma over {0 <= s <= T <= horizon}; exact since g >= 0 makes
  /// Sigma monotone in T - s.
  double sup_integrated(double horizon) const { return integrated(0.0, horizon); }
  /// sup over s in [s_lo, s_hi] of Sigma(s, T).
  double sup_integrated_over(double s_lo, double s_hi, double T) const;

  bool is_zero() const { return zero_; }

 private:
  enum class kind { vasicek, ho_lee, grid };
  hjm_volatility() = default;

  kind kind_ = kind::vasicek;
  double a_ = 0.0;
  double sigma_hat_ = 0.0;
  std::vector<double> offsets_;   // grid kind
  std::vector<double> values_;    // g at offsets
  std::vector<double> cum_;       // int_0^{offset_k} g
  bool zero_ = false;

  double big_sigma(double ttm) const;  // Sigma as a function of T - s
};

/// Admissible moment strip for the composition in the forward-rate model.
struct hjm_strip_bounds {
  double m_prime;        // sup Sigma(s,T)
  double m_double_prime; // sup of the window-restricted Sigma(s,T_{i+1})
  double lo;             // left end of the MGF strip
  double hi;             // right end of the MGF strip (closed)
};

/// Forward-rate term-structure model with a deterministic volatility
/// structure; the drift A(s,T) = theta_s(Sigma(s,T)) makes discounted
/// bonds martingales. Immutable, usable concurrently.
class hjm_model {
 public:
  hjm_model(levy_model driver, hjm_volatility vol, discount_curve curve, double horizon);

  const levy_model& driver() const { return driver_; }
  const hjm_volatility& vol() const { return vol_; }
  const discount_curve& curve() const { return curve_; }
  double horizon() const { return horizon_; }

  /// A(s,T) = theta_s(Sigma(s,T)); zero at s = T.
  double drift(double s, double T) const;
  double drift(double s, double T, double U) const { return drift(s, U) - drift(s, T); }

  /// H = constant + int_0^{T*} loading(s) dL_s for the composition's log
  /// value, with the loading supported on [0, last fixing].
  struct composition_terms {
    double constant;                        // log Z + integrated drift terms
    double log_z;                           // log B(0,T_1)/B(0,T*)
    std::function<double(double)> loading;  // g(s), deterministic
    std::vector<double> breakpoints;        // kinks of g within [0, last fixing]
    double last_fixing;
  };
  composition_terms composition(const composition_spec& spec, double quad_tol = 1e-12) const;

  /// Tightest bounds from the volatility structure; throws
  /// feasibility_error when M/M'' <= N+1.
  hjm_strip_bounds strip_bounds(const composition_spec& spec) const;
  /// Manual override; values must dominate the tightest ones and stay
  /// below the driver's M.
  hjm_strip_bounds strip_bounds(const composition_spec& spec, double m_prime,
                                double m_double_prime) const;

  /// Moment generating function of H under the T*-forward measure.
  complex mgf(const composition_spec& spec, const hjm_strip_bounds& bounds, complex z,
              double quad_tol = 1e-10) const;

  /// Deterministic composition value when the volatility is zero.
  double deterministic_value(const composition_spec& spec) const;

 private:
  levy_model driver_;
  hjm_volatility vol_;
  discount_curve curve_;
  double horizon_;

  void check_spec(const composition_spec& spec) const;
};

}  // namespace levyts
