#pragma once

#include <complex>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "levyts/errors.hpp"

namespace levyts {

using complex = std::complex<double>;

/// Exponential-moment bound: moment generating functions exist on the
/// closed strip |Re z| <= (1+epsilon)*M.
struct em_bound {
  double M = 0.0;
  double epsilon = 0.0;
};

/// Gaussian law with local drift `drift` and diffusion rate `variance`.
struct brownian_law {
  double drift = 0.0;
  double variance = 1.0;
};

/// Normal inverse Gaussian law; exponential moments exist for arguments
/// in (-alpha-beta, alpha-beta).
struct nig_law {
  double alpha = 1.0;
  double beta = 0.0;
  double delta = 1.0;
  double mu = 0.0;

  double gamma() const;    // sqrt(alpha^2 - beta^2)
  double mean_rate() const;      // mu + delta*beta/gamma
  double variance_rate() const;  // delta*alpha^2/gamma^3
};

using segment_law = std::variant<brownian_law, nig_law>;

/// One homogeneous time segment; the law applies on [previous end, end).
struct levy_segment {
  double end = std::numeric_limits<double>::infinity();
  segment_law law;
};

complex law_cumulant(const segment_law& law, complex z);
complex law_cumulant_derivative(const segment_law& law, complex z);
double law_drift(const segment_law& law);
double law_variance_rate(const segment_law& law);
/// Largest u with finite exponential moment of the jump tail (sup, open).
double law_moment_sup(const segment_law& law);
/// Esscher tilt by e^{ux}: Brownian drift shifts by c*u, NIG beta by u.
segment_law law_tilted(const segment_law& law, double u);
segment_law law_centered(const segment_law& law);

/// A piecewise-continuous deterministic integrand with its discontinuities.
struct time_function {
  std::function<complex(double)> value;
  std::vector<double> breakpoints;
};

struct em_report {
  bool valid = false;
  double largest_admissible_M = 0.0;  // for the claimed epsilon; open bound
  std::string detail;
};

/// Driving process with independent increments and piecewise-constant
/// local characteristics. Immutable; all member functions are pure.
class levy_model {
 public:
  static levy_model brownian(double drift, double variance,
                             std::optional<em_bound> em = std::nullopt);
  static levy_model nig(double alpha, double beta, double delta, double mu,
                        std::optional<em_bound> em = std::nullopt);
  /// Segments given as (end time, law), ordered, covering [0, horizon).
  static levy_model composite(std::vector<levy_segment> segments,
                              std::optional<em_bound> em = std::nullopt);

  const em_bound& em() const { return em_; }
  const std::vector<levy_segment>& segments() const { return segments_; }
  const segment_law& law_at(double s) const;
  /// Interior segment boundaries (integration/simulation breakpoints).
  std::vector<double> breakpoints() const;

  double local_drift(double s) const;
  double diffusion(double s) const;
  double variance_rate(double s) const;

  /// Same jump structure and diffusion, local drift forced to zero.
  levy_model centered() const;
  bool is_centered() const;

  /// theta_s(z); requires |Re z| <= (1+epsilon)*M.
  complex cumulant(double s, complex z) const;
  complex cumulant_derivative(double s, complex z) const;

 private:
  levy_model(std::vector<levy_segment> segments, em_bound em)
      : segments_(std::move(segments)), em_(em) {}

  std::vector<levy_segment> segments_;
  em_bound em_;
};

/// E[e^{iu L_t}] = exp(int_0^t theta_s(iu) ds); exact for piecewise-constant
/// characteristics.
complex char_function(const levy_model& model, double t, double u);

/// int_0^t theta_s(f(s)) ds, with forced breakpoints at the discontinuities
/// of f and of the characteristics. exp of the result equals
/// E[exp(int_0^t f dL)] whenever sup |Re f| <= M.
complex integrated_cumulant(const levy_model& model, const time_function& f,
                            double t, double abs_tol = 1e-10);

/// Checks a claimed (M, epsilon) against the analytic exponential-moment
/// domain of the given families; usable before construction.
em_report validate_exponential_moments(const std::vector<levy_segment>& segments,
                                       const em_bound& claim);
em_report validate_exponential_moments(const levy_model& model);

}  // namespace levyts
