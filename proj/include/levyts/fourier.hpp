#pragma once

#include <functional>
#include <optional>

#include "levyts/forward_price.hpp"
#include "levyts/hjm.hpp"
#include "levyts/tenor.hpp"

namespace levyts {

/// Fourier transform of the call payoff (e^x - K)^+, defined for Im z > 1:
/// K^{1+iz} / (iz (1+iz)). The same expression on Im z < 0 is the put
/// transform.
complex call_payoff_transform(complex z, double strike);

struct quadrature_settings {
  double abs_tol = 1e-9;       // absolute tolerance on the price
  double truncation = 200.0;   // initial contour truncation, doubled on demand
  std::size_t max_nodes = 100000;
};

struct pricing_request {
  std::optional<double> damping;  // contour shift R; default: geometric midpoint
  quadrature_settings quad;
};

struct price_result {
  double price = 0.0;
  double damping = 0.0;
  double truncation = 0.0;
  std::size_t nodes = 0;
  double error_estimate = 0.0;
  double tail_bound = 0.0;
};

/// Everything the transform integral needs, detached from the model type.
/// Holds references to the owning model; keep that model alive.
struct mgf_slice {
  std::function<complex(complex)> mgf;
  double strip_lo = 0.0;   // admissible Re z interval of the MGF
  double strip_hi = 0.0;
  double discount = 1.0;   // B(0, T*)
  double front_bond = 1.0; // B(0, T_1)
  bool deterministic = false;
  double det_value = 0.0;  // composition value when H is constant
};

mgf_slice make_slice(const hjm_model& model, const composition_spec& spec,
                     double mgf_quad_tol = 1e-10);
mgf_slice make_slice(const forward_price_model& model, const composition_spec& spec,
                     double mgf_quad_tol = 1e-10);

/// Damped inverse-transform price of (e^H - K)^+ (put = (K - e^H)^+),
/// integrating over [0, U] and doubling the real part by conjugate
/// symmetry. U grows until the analytic tail bound
/// |M(R-iU)| K^{1-R} / U falls below a tenth of the tolerance.
price_result transform_price(const mgf_slice& slice, double strike,
                             std::optional<double> damping, const quadrature_settings& settings,
                             bool put);

price_result price_cap(const hjm_model& model, const composition_spec& spec,
                       const pricing_request& request = {});
price_result price_cap(const forward_price_model& model, const composition_spec& spec,
                       const pricing_request& request = {});

enum class floor_route { parity, direct };

/// Floor via cap-floor parity (default) or by the direct put transform on
/// the negative damping strip.
price_result price_floor(const hjm_model& model, const composition_spec& spec,
                         const pricing_request& request = {},
                         floor_route route = floor_route::parity);
price_result price_floor(const forward_price_model& model, const composition_spec& spec,
                         const pricing_request& request = {},
                         floor_route route = floor_route::parity);

/// Caplet (floorlet) on the period rate, unit notional, via the one-period
/// composition with level K = 1 + accrual * strike_rate; the result is the
/// composition price divided by the accrual.
price_result price_caplet(const hjm_model& model, double fixing, double t1, double t2,
                          double strike_rate, const pricing_request& request = {},
                          option_side side = option_side::cap);
/// Same reduction on a one-period forward-price model (its own tenor).
price_result price_caplet(const forward_price_model& model, double strike_rate,
                          const pricing_request& request = {},
                          option_side side = option_side::cap);

}  // namespace levyts
