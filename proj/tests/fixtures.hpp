// Shared model setups for the test suites: a flat 4% market, a Vasicek
// volatility structure with a = 0.05, and NIG/Brownian drivers of the size
// the smile calibration produces.
#pragma once

#include <vector>

#include "levyts/forward_price.hpp"
#include "levyts/hjm.hpp"
#include "levyts/levy.hpp"
#include "levyts/tenor.hpp"

namespace fixtures {

inline constexpr double kFlatRate = 0.04;
inline constexpr double kMeanReversion = 0.05;
inline constexpr double kSigmaHat = 0.0112;

inline levyts::discount_curve flat_curve(double horizon = 12.0) {
  return levyts::discount_curve::flat(kFlatRate, horizon);
}

inline levyts::levy_model nig_driver() {
  // unit-variance shape, mildly skewed; centered so it also serves the
  // forward-price model
  return levyts::levy_model::nig(0.6, 0.15, 0.62, 0.0).centered();
}

inline levyts::levy_model brownian_driver() { return levyts::levy_model::brownian(0.0, 1.0); }

inline levyts::hjm_model hjm_nig(double horizon = 7.0) {
  return levyts::hjm_model(nig_driver(), levyts::hjm_volatility::vasicek(kMeanReversion, kSigmaHat),
                           flat_curve(), horizon);
}

inline levyts::hjm_model hjm_brownian(double horizon = 7.0) {
  return levyts::hjm_model(brownian_driver(),
                           levyts::hjm_volatility::vasicek(kMeanReversion, kSigmaHat),
                           flat_curve(), horizon);
}

inline levyts::hjm_model hjm_zero_vol(double horizon = 7.0) {
  return levyts::hjm_model(brownian_driver(), levyts::hjm_volatility::vasicek(kMeanReversion, 0.0),
                           flat_curve(), horizon);
}

/// Quarterly composition over [start, start + years].
inline levyts::tenor_structure quarterly_tenor(double start, double years) {
  std::vector<double> dates;
  const int n = static_cast<int>(years * 4.0 + 0.5);
  for (int i = 0; i <= n; ++i) dates.push_back(start + 0.25 * i);
  return levyts::tenor_structure(dates);
}

/// Four quarterly periods starting at 5y, settling at 6y.
inline levyts::composition_spec small_composition(double level = 1.02) {
  return levyts::composition_spec(quarterly_tenor(5.0, 1.0), level);
}

/// Forward-price etas matched to the Vasicek structure: each period's
/// volatility decays toward its maturity with the same scale.
inline std::vector<levyts::eta_function> matched_etas(const levyts::tenor_structure& tenor,
                                                      double sigma_hat = kSigmaHat) {
  std::vector<levyts::eta_function> etas;
  const double kappa =
      sigma_hat / kMeanReversion * (1.0 - std::exp(-kMeanReversion * 0.25));
  for (int i = 1; i <= tenor.periods(); ++i) {
    etas.push_back(levyts::eta_function::exp_decay(kappa, kMeanReversion));
  }
  return etas;
}

inline levyts::forward_price_model fp_nig(const levyts::tenor_structure& tenor) {
  return levyts::forward_price_model(nig_driver(), tenor, matched_etas(tenor), flat_curve());
}

inline levyts::forward_price_model fp_brownian(const levyts::tenor_structure& tenor) {
  return levyts::forward_price_model(brownian_driver(), tenor, matched_etas(tenor), flat_curve());
}

inline levyts::forward_price_model fp_zero_vol(const levyts::tenor_structure& tenor) {
  std::vector<levyts::eta_function> etas(static_cast<std::size_t>(tenor.periods()),
                                         levyts::eta_function::constant(0.0));
  return levyts::forward_price_model(brownian_driver(), tenor, etas, flat_curve());
}

}  // namespace fixtures
