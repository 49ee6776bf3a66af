#include "oracles.hpp"

#include <algorithm>
#include <cmath>

#include "levyts/quad.hpp"

namespace oracles {

namespace {

// e^{w} - 1 - w, stable for small |w|
complex expm1m(complex w) {
  if (std::abs(w) > 1e-4) return std::exp(w) - 1.0 - w;
  // w^2/2 * (1 + w/3 + w^2/12 + w^3/60 + w^4/360)
  return 0.5 * w * w * (1.0 + w / 3.0 + w * w / 12.0 + w * w * w / 60.0 + w * w * w * w / 360.0);
}

double nig_density(const levyts::nig_law& n, double x) {
  const double ax = n.alpha * std::abs(x);
  if (ax > 690.0) return 0.0;  // K_1 underflows
  return n.delta * n.alpha / 3.14159265358979323846 * std::exp(n.beta * x) *
         std::cyl_bessel_k(1.0, ax) / std::abs(x);
}

}  // namespace

complex nig_jump_cumulant(const levyts::nig_law& law, complex z, double tol) {
  constexpr double pi = 3.14159265358979323846;
  // decay rates of e^{zx} nu(x) on each side
  const double rate_pos = law.alpha - law.beta - std::max(z.real(), 0.0);
  const double rate_neg = law.alpha + law.beta + std::min(z.real(), 0.0);
  const double L_pos = 60.0 / std::max(rate_pos, 0.05);
  const double L_neg = 60.0 / std::max(rate_neg, 0.05);

  // analytic core: on (-eps, eps) the integrand is delta/pi * (z^2/2 + odd) + O(x^2 ln x)
  const double eps = 1e-6;
  const complex core = law.delta * z * z * eps / pi;

  // wings in log coordinates to tame the x^{-2} density
  auto wing = [&](double sign, double L) -> complex {
    auto g = [&](double y) -> complex {
      const double x = sign * std::exp(y);
      return expm1m(z * x) * nig_density(law, x) * std::exp(y);
    };
    auto r = levyts::integrate_or_throw(g, std::log(eps), std::log(L), {0.0}, tol / 3, 300000);
    return r.value;
  };
  return core + wing(1.0, L_pos) + wing(-1.0, L_neg);
}

complex nig_cumulant(const levyts::nig_law& law, complex z, double tol) {
  const double b = law.mu + law.delta * law.beta / law.gamma();
  return b * z + nig_jump_cumulant(law, z, tol);
}

complex call_transform_by_quadrature(complex z, double strike, double tol) {
  const double damp = z.imag();  // integrand decays like e^{(1-damp)x}
  const double lo = std::log(strike);
  const double hi = lo + 80.0 / std::max(damp - 1.0, 0.05);
  auto integrand = [&](double x) -> complex {
    return std::exp(complex(0.0, 1.0) * z * x) * (std::exp(x) - strike);
  };
  auto r = levyts::integrate_or_throw(integrand, lo, hi, {}, tol, 400000);
  return r.value;
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / 1.41421356237309504880); }

double gaussian_cap_closed_form(double discount, double m, double v, double strike) {
  if (v <= 0.0) return discount * std::max(std::exp(m) - strike, 0.0);
  const double sd = std::sqrt(v);
  const double d2 = (m - std::log(strike)) / sd;
  const double d1 = d2 + sd;
  return discount * (std::exp(m + 0.5 * v) * normal_cdf(d1) - strike * normal_cdf(d2));
}

double central_difference(const std::function<double(double)>& f, double x, double h) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

}  // namespace oracles
