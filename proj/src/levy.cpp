#include "levyts/levy.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "levyts/quad.hpp"

namespace levyts {

double nig_law::gamma() const { return std::sqrt(alpha * alpha - beta * beta); }
double nig_law::mean_rate() const { return mu + delta * beta / gamma(); }
double nig_law::variance_rate() const {
  const double g = gamma();
  return delta * alpha * alpha / (g * g * g);
}

complex law_cumulant(const segment_law& law, complex z) {
  return std::visit(
      [&](const auto& l) -> complex {
        using L = std::decay_t<decltype(l)>;
        if constexpr (std::is_same_v<L, brownian_law>) {
          return l.drift * z + 0.5 * l.variance * z * z;
        } else {
          // principal branch; the strip constraint keeps the argument in
          // the right half-plane, off the cut
          const complex w = l.beta + z;
          return l.mu * z + l.delta * (l.gamma() - std::sqrt(l.alpha * l.alpha - w * w));
        }
      },
      law);
}

complex law_cumulant_derivative(const segment_law& law, complex z) {
  return std::visit(
      [&](const auto& l) -> complex {
        using L = std::decay_t<decltype(l)>;
        if constexpr (std::is_same_v<L, brownian_law>) {
          return complex(l.drift) + l.variance * z;
        } else {
          const complex w = l.beta + z;
          return complex(l.mu) + l.delta * w / std::sqrt(l.alpha * l.alpha - w * w);
        }
      },
      law);
}

double law_drift(const segment_law& law) {
  return std::visit(
      [](const auto& l) -> double {
        using L = std::decay_t<decltype(l)>;
        if constexpr (std::is_same_v<L, brownian_law>) {
          return l.drift;
        } else {
          return l.mean_rate();
        }
      },
      law);
}

double law_variance_rate(const segment_law& law) {
  return std::visit(
      [](const auto& l) -> double {
        using L = std::decay_t<decltype(l)>;
        if constexpr (std::is_same_v<L, brownian_law>) {
          return l.variance;
        } else {
          return l.variance_rate();
        }
      },
      law);
}

double law_moment_sup(const segment_law& law) {
  return std::visit(
      [](const auto& l) -> double {
        using L = std::decay_t<decltype(l)>;
        if constexpr (std::is_same_v<L, brownian_law>) {
          return std::numeric_limits<double>::infinity();
        } else {
          return std::min(l.alpha - l.beta, l.alpha + l.beta);
        }
      },
      law);
}

segment_law law_tilted(const segment_law& law, double u) {
  return std::visit(
      [&](const auto& l) -> segment_law {
        using L = std::decay_t<decltype(l)>;
        if constexpr (std::is_same_v<L, brownian_law>) {
          return brownian_law{l.drift + l.variance * u, l.variance};
        } else {
          nig_law t = l;
          t.beta += u;
          return t;
        }
      },
      law);
}

segment_law law_centered(const segment_law& law) {
  return std::visit(
      [](const auto& l) -> segment_law {
        using L = std::decay_t<decltype(l)>;
        if constexpr (std::is_same_v<L, brownian_law>) {
          return brownian_law{0.0, l.variance};
        } else {
          nig_law c = l;
          c.mu = -l.delta * l.beta / l.gamma();
          return c;
        }
      },
      law);
}

namespace {

void validate_law(const segment_law& law) {
  if (const auto* bm = std::get_if<brownian_law>(&law)) {
    if (bm->variance < 0.0) throw feasibility_error("brownian variance rate must be >= 0");
    return;
  }
  const auto& n = std::get<nig_law>(law);
  if (!(n.alpha > 0.0)) throw feasibility_error("nig alpha must be > 0");
  if (!(std::abs(n.beta) < n.alpha)) throw feasibility_error("nig requires |beta| < alpha");
  if (!(n.delta > 0.0)) throw feasibility_error("nig delta must be > 0");
}

double model_moment_sup(const std::vector<levy_segment>& segments) {
  double sup = std::numeric_limits<double>::infinity();
  for (const auto& s : segments) sup = std::min(sup, law_moment_sup(s.law));
  return sup;
}

em_bound default_em(const std::vector<levy_segment>& segments) {
  const double eps = 0.1;
  const double sup = model_moment_sup(segments);
  if (std::isinf(sup)) return em_bound{50.0, eps};
  return em_bound{0.99 * sup / (1.0 + eps), eps};
}

void validate_em_claim(const std::vector<levy_segment>& segments, const em_bound& em) {
  if (!(em.M > 0.0) || !(em.epsilon > 0.0)) {
    throw feasibility_error("exponential-moment bound needs M > 0 and epsilon > 0");
  }
  const double sup = model_moment_sup(segments);
  if (!((1.0 + em.epsilon) * em.M < sup)) {
    std::ostringstream os;
    os << "exponential-moment claim violated: (1+epsilon)*M = "
       << (1.0 + em.epsilon) * em.M << " must be < " << sup;
    throw feasibility_error(os.str());
  }
}

}  // namespace

levy_model levy_model::brownian(double drift, double variance, std::optional<em_bound> em) {
  return composite({{std::numeric_limits<double>::infinity(), brownian_law{drift, variance}}}, em);
}

levy_model levy_model::nig(double alpha, double beta, double delta, double mu,
                           std::optional<em_bound> em) {
  return composite({{std::numeric_limits<double>::infinity(), nig_law{alpha, beta, delta, mu}}}, em);
}

levy_model levy_model::composite(std::vector<levy_segment> segments, std::optional<em_bound> em) {
  if (segments.empty()) throw feasibility_error("a driver needs at least one segment");
  double prev = 0.0;
  for (const auto& s : segments) {
    validate_law(s.law);
    if (!(s.end > prev)) throw feasibility_error("segment end times must be increasing");
    prev = s.end;
  }
  em_bound bound = em ? *em : default_em(segments);
  validate_em_claim(segments, bound);
  return levy_model(std::move(segments), bound);
}

const segment_law& levy_model::law_at(double s) const {
  for (const auto& seg : segments_) {
    if (s < seg.end) return seg.law;
  }
  return segments_.back().law;
}

std::vector<double> levy_model::breakpoints() const {
  std::vector<double> b;
  for (std::size_t i = 0; i + 1 < segments_.size(); ++i) b.push_back(segments_[i].end);
  return b;
}

double levy_model::local_drift(double s) const { return law_drift(law_at(s)); }

double levy_model::diffusion(double s) const {
  const auto* bm = std::get_if<brownian_law>(&law_at(s));
  return bm ? bm->variance : 0.0;
}

double levy_model::variance_rate(double s) const { return law_variance_rate(law_at(s)); }

levy_model levy_model::centered() const {
  std::vector<levy_segment> out = segments_;
  for (auto& seg : out) seg.law = law_centered(seg.law);
  return levy_model(std::move(out), em_);
}

bool levy_model::is_centered() const {
  for (const auto& seg : segments_) {
    if (std::abs(law_drift(seg.law)) > 1e-14) return false;
  }
  return true;
}

complex levy_model::cumulant(double s, complex z) const {
  const double lim = (1.0 + em_.epsilon) * em_.M;
  if (std::abs(z.real()) > lim * (1.0 + 1e-12) + 1e-300) {
    throw strip_error(z.real(), -lim, lim, "cumulant argument outside admissible strip");
  }
  return law_cumulant(law_at(s), z);
}

complex levy_model::cumulant_derivative(double s, complex z) const {
  const double lim = (1.0 + em_.epsilon) * em_.M;
  if (std::abs(z.real()) > lim * (1.0 + 1e-12) + 1e-300) {
    throw strip_error(z.real(), -lim, lim, "cumulant argument outside admissible strip");
  }
  return law_cumulant_derivative(law_at(s), z);
}

complex char_function(const levy_model& model, double t, double u) {
  complex total = 0.0;
  double lo = 0.0;
  for (const auto& seg : model.segments()) {
    const double hi = std::min(seg.end, t);
    if (hi > lo) total += (hi - lo) * law_cumulant(seg.law, complex(0.0, u));
    if (seg.end >= t) break;
    lo = seg.end;
  }
  return std::exp(total);
}

complex integrated_cumulant(const levy_model& model, const time_function& f, double t,
                            double abs_tol) {
  const double M = model.em().M;
  auto integrand = [&](double s) -> complex {
    const complex v = f.value(s);
    if (std::abs(v.real()) > M * (1.0 + 1e-12) + 1e-300) {
      throw strip_error(v.real(), -M, M, "integrand leaves the strip |Re f| <= M");
    }
    return model.cumulant(s, v);
  };
  std::vector<double> breaks = f.breakpoints;
  for (double b : model.breakpoints()) breaks.push_back(b);
  auto r = integrate_or_throw(integrand, 0.0, t, breaks, abs_tol);
  return r.value;
}

em_report validate_exponential_moments(const std::vector<levy_segment>& segments,
                                       const em_bound& claim) {
  em_report rep;
  const double sup = model_moment_sup(segments);
  rep.largest_admissible_M = sup / (1.0 + claim.epsilon);
  rep.valid = claim.M > 0.0 && claim.epsilon > 0.0 && (1.0 + claim.epsilon) * claim.M < sup;
  std::ostringstream os;
  if (rep.valid) {
    os << "(1+epsilon)*M = " << (1.0 + claim.epsilon) * claim.M
       << " lies inside the exponential-moment domain (sup " << sup << ")";
  } else {
    os << "claimed M = " << claim.M << " with epsilon = " << claim.epsilon
       << " reaches the boundary of the exponential-moment domain (sup " << sup << ")";
  }
  rep.detail = os.str();
  return rep;
}

em_report validate_exponential_moments(const levy_model& model) {
  return validate_exponential_moments(model.segments(), model.em());
}

}  // namespace levyts
