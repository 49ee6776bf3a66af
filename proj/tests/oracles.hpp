// Independent numerical routes used only by tests: brute-force quadrature of
// the NIG Levy density, direct damped-payoff transforms, and the lognormal
// closed form. These must not share code with the implementation paths they
// check.
#pragma once

#include <complex>
#include <functional>

#include "levyts/levy.hpp"

namespace oracles {

using complex = std::complex<double>;

/// Jump integral int (e^{zx} - 1 - zx) nu(dx) of the NIG Levy density,
/// nu(x) = (delta*alpha/pi) e^{beta x} K_1(alpha|x|)/|x|, by quadrature.
complex nig_jump_cumulant(const levyts::nig_law& law, complex z, double tol = 1e-10);

/// Full NIG cumulant through the density route: b z + jump integral with
/// b = mu + delta*beta/gamma.
complex nig_cumulant(const levyts::nig_law& law, complex z, double tol = 1e-10);

/// int (e^{ux} - 1 - ux) e^{tilt*x} nu(dx): the compensated jump integral
/// under the exponentially tilted density.
complex nig_tilted_jump_integral(const levyts::nig_law& law, complex u, double tilt,
                                 double tol = 1e-10);

/// int x (e^{tilt*x} - 1) nu(dx): the jump part of the finite-variation
/// correction between tilted measures.
double nig_drift_correction(const levyts::nig_law& law, double tilt, double tol = 1e-10);

/// Fourier transform of the damped call payoff by direct quadrature:
/// int e^{izx} (e^x - K)^+ dx for Im z > 1.
complex call_transform_by_quadrature(complex z, double strike, double tol = 1e-10);

/// Lognormal closed form: discount * E[(e^H - K)^+] for H ~ N(m, v).
double gaussian_cap_closed_form(double discount, double m, double v, double strike);

double normal_cdf(double x);

/// Central finite difference of a scalar function.
double central_difference(const std::function<double(double)>& f, double x, double h);

}  // namespace oracles
