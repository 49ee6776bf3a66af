#include "levyts/fourier.hpp"

#include <cmath>
#include <limits>
#include <memory>
#include <sstream>

#include "levyts/quad.hpp"

namespace levyts {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

complex call_payoff_transform(complex z, double strike) {
  if (!(strike > 0.0)) throw feasibility_error("strike must be positive");
  if (!(z.imag() > 1.0) && !(z.imag() < 0.0)) {
    throw strip_error(z.imag(), 1.0, std::numeric_limits<double>::infinity(),
                      "payoff transform needs Im z > 1 (call) or Im z < 0 (put)");
  }
  const complex iz(-z.imag(), z.real());
  return std::exp((1.0 + iz) * std::log(strike)) / (iz * (1.0 + iz));
}

mgf_slice make_slice(const hjm_model& model, const composition_spec& spec, double mgf_quad_tol) {
  mgf_slice s;
  s.discount = model.curve()(spec.tenor.settlement());
  s.front_bond = model.curve()(spec.tenor.first_date());
  s.deterministic = model.vol().is_zero();
  s.det_value = model.deterministic_value(spec);
  const auto bounds = model.strip_bounds(spec);
  s.strip_lo = bounds.lo;
  s.strip_hi = bounds.hi;
  s.mgf = [&model, spec, bounds, mgf_quad_tol](complex z) {
    return model.mgf(spec, bounds, z, mgf_quad_tol);
  };
  return s;
}

mgf_slice make_slice(const forward_price_model& model, const composition_spec& spec,
                     double mgf_quad_tol) {
  mgf_slice s;
  s.discount = model.curve()(spec.tenor.settlement());
  s.front_bond = model.curve()(spec.tenor.first_date());
  s.deterministic = model.vol_is_zero();
  s.det_value = model.deterministic_value(spec);
  const auto bound = model.strip_bound();
  s.strip_lo = bound.lo;
  s.strip_hi = bound.hi;
  s.mgf = [&model, spec, bound, mgf_quad_tol](complex z) {
    return model.mgf(spec, bound, z, mgf_quad_tol);
  };
  return s;
}

namespace {

double pick_damping(const mgf_slice& slice, std::optional<double> damping, bool put) {
  if (put) {
    if (!(slice.strip_lo < 0.0)) {
      std::ostringstream os;
      os << "direct put transform needs negative admissible damping; strip starts at "
         << slice.strip_lo;
      throw feasibility_error(os.str());
    }
    if (damping) {
      if (!(*damping > slice.strip_lo) || !(*damping < 0.0)) {
        throw strip_error(*damping, slice.strip_lo, 0.0, "put damping outside (lo, 0)");
      }
      return *damping;
    }
    return slice.strip_lo < -3.0 ? -3.0 : 0.5 * slice.strip_lo;
  }
  if (!(slice.strip_hi > 1.0)) {
    std::ostringstream os;
    os << "cap damping needs an admissible interval reaching beyond 1; strip ends at "
       << slice.strip_hi;
    throw feasibility_error(os.str());
  }
  if (damping) {
    if (!(*damping > 1.0) || !(*damping < slice.strip_hi)) {
      throw strip_error(*damping, 1.0, slice.strip_hi, "cap damping outside (1, hi)");
    }
    return *damping;
  }
  // geometric midpoint of (1, hi), clear of the endpoint blow-up
  const double r = std::sqrt(slice.strip_hi);
  const double lo_guard = 1.0 + 1e-4 * (slice.strip_hi - 1.0);
  const double hi_guard = 1.0 + 0.99 * (slice.strip_hi - 1.0);
  return std::min(std::max(r, lo_guard), hi_guard);
}

}  // namespace

price_result transform_price(const mgf_slice& slice, double strike,
                             std::optional<double> damping, const quadrature_settings& settings,
                             bool put) {
  if (!(strike > 0.0)) throw feasibility_error("strike must be positive");

  price_result out;
  if (slice.deterministic) {
    const double intrinsic = put ? std::max(strike - slice.det_value, 0.0)
                                 : std::max(slice.det_value - strike, 0.0);
    out.price = slice.discount * intrinsic;
    return out;
  }

  const double r = pick_damping(slice, damping, put);
  out.damping = r;

  const double log_k = std::log(strike);
  const double k_pow = std::exp((1.0 - r) * log_k);
  const double scale = slice.discount / kPi;

  double trunc = settings.truncation;
  double tail = 0.0;
  for (int doublings = 0;; ++doublings) {
    tail = scale * std::abs(slice.mgf(complex(r, -trunc))) * k_pow / trunc;
    if (tail <= 0.1 * settings.abs_tol) break;
    if (doublings >= 40) {
      throw numeric_error("contour truncation bound does not decay; price unattainable at the "
                          "requested tolerance");
    }
    trunc *= 2.0;
  }
  out.truncation = trunc;
  out.tail_bound = tail;

  auto integrand = [&](double u) -> complex {
    const complex m = slice.mgf(complex(r, -u));
    const complex iu_r(-r, u);  // iu - R
    const complex transform = std::exp((1.0 + iu_r) * log_k) / (iu_r * (1.0 + iu_r));
    return m * transform;
  };
  const double integral_tol = 0.9 * settings.abs_tol / scale;
  auto integral =
      integrate_adaptive(integrand, 0.0, trunc, {}, integral_tol, settings.max_nodes);
  if (!integral.converged) {
    std::ostringstream os;
    os << "transform quadrature did not converge: error estimate " << integral.error * scale
       << " above tolerance " << settings.abs_tol << " after " << integral.nodes << " nodes";
    throw numeric_error(os.str());
  }
  out.nodes = integral.nodes;
  out.error_estimate = scale * integral.error + tail;
  out.price = scale * integral.value.real();
  if (out.price < 0.0) {
    if (out.price < -std::max(settings.abs_tol, 1e-10)) {
      throw numeric_error("transform price came out negative beyond tolerance");
    }
    out.price = 0.0;
  }
  return out;
}

namespace {

price_result floor_from_parity(const mgf_slice& slice, double strike,
                               const pricing_request& request) {
  price_result cap = transform_price(slice, strike, request.damping, request.quad, false);
  cap.price = cap.price - slice.front_bond + strike * slice.discount;
  if (cap.price < 0.0 && cap.price > -1e-10) cap.price = 0.0;
  return cap;
}

}  // namespace

price_result price_cap(const hjm_model& model, const composition_spec& spec,
                       const pricing_request& request) {
  return transform_price(make_slice(model, spec), spec.level, request.damping, request.quad,
                         false);
}

price_result price_cap(const forward_price_model& model, const composition_spec& spec,
                       const pricing_request& request) {
  return transform_price(make_slice(model, spec), spec.level, request.damping, request.quad,
                         false);
}

price_result price_floor(const hjm_model& model, const composition_spec& spec,
                         const pricing_request& request, floor_route route) {
  const auto slice = make_slice(model, spec);
  if (route == floor_route::direct) {
    return transform_price(slice, spec.level, request.damping, request.quad, true);
  }
  return floor_from_parity(slice, spec.level, request);
}

price_result price_floor(const forward_price_model& model, const composition_spec& spec,
                         const pricing_request& request, floor_route route) {
  const auto slice = make_slice(model, spec);
  if (route == floor_route::direct) {
    return transform_price(slice, spec.level, request.damping, request.quad, true);
  }
  return floor_from_parity(slice, spec.level, request);
}

price_result price_caplet(const hjm_model& model, double fixing, double t1, double t2,
                          double strike_rate, const pricing_request& request, option_side side) {
  const double accrual = t2 - t1;
  if (!(accrual > 0.0)) throw feasibility_error("caplet needs t2 > t1");
  const double level = 1.0 + accrual * strike_rate;
  composition_spec spec(tenor_structure({t1, t2}, {fixing}), level, side);
  price_result r = side == option_side::cap ? price_cap(model, spec, request)
                                            : price_floor(model, spec, request);
  r.price /= accrual;
  r.error_estimate /= accrual;
  r.tail_bound /= accrual;
  return r;
}

price_result price_caplet(const forward_price_model& model, double strike_rate,
                          const pricing_request& request, option_side side) {
  if (model.tenor().periods() != 1) {
    throw feasibility_error("caplet reduction needs a one-period tenor");
  }
  const double accrual = model.tenor().accrual(1);
  const double level = 1.0 + accrual * strike_rate;
  composition_spec spec(model.tenor(), level, side);
  price_result r = side == option_side::cap ? price_cap(model, spec, request)
                                            : price_floor(model, spec, request);
  r.price /= accrual;
  r.error_estimate /= accrual;
  r.tail_bound /= accrual;
  return r;
}

}  // namespace levyts
