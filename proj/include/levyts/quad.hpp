#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <queue>
#include <sstream>
#include <type_traits>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "levyts/errors.hpp"

namespace levyts {

/// Outcome of an adaptive quadrature run.
template <class T>
struct quad_result {
  T value{};
  double error = 0.0;    // accumulated absolute error estimate
  std::size_t nodes = 0; // integrand evaluations
  bool converged = false;
};

namespace detail {

inline double quad_abs(double x) { return std::abs(x); }
inline double quad_abs(const std::complex<double>& x) { return std::abs(x); }

template <class F>
using quad_value_t = std::decay_t<decltype(std::declval<F&>()(0.0))>;

}  // namespace detail

/// Merges interior breakpoints into a sorted partition of [a, b].
inline std::vector<double> partition_points(double a, double b,
                                            const std::vector<double>& breakpoints) {
  std::vector<double> pts;
  pts.push_back(a);
  for (double t : breakpoints) {
    if (t > a && t < b) pts.push_back(t);
  }
  pts.push_back(b);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [&](double x, double y) { return std::abs(x - y) < 1e-14 * (1.0 + std::abs(b - a)); }),
            pts.end());
  return pts;
}

/// Adaptive Gauss-Kronrod quadrature of f over [a, b] to an absolute
/// tolerance. Interior breakpoints are honored as initial segment
/// boundaries; the worst segment is bisected until the summed error
/// estimate meets the tolerance or the node budget runs out.
template <class F>
quad_result<detail::quad_value_t<F>> integrate_adaptive(
    F&& f, double a, double b, const std::vector<double>& breakpoints,
    double abs_tol, std::size_t max_nodes = 100000) {
  using T = detail::quad_value_t<F>;
  using rule = boost::math::quadrature::gauss_kronrod<double, 15>;

  quad_result<T> out;
  if (!(b > a)) {
    out.converged = true;
    return out;
  }

  struct segment {
    double lo, hi;
    T value;
    double error;
  };
  struct worse {
    bool operator()(const segment& x, const segment& y) const {
      if (x.error != y.error) return x.error < y.error;
      return x.lo > y.lo;  // deterministic tie-break
    }
  };

  std::size_t nodes = 0;
  auto apply = [&](double lo, double hi) {
    segment s{lo, hi, T{}, 0.0};
    s.value = rule::integrate(f, lo, hi, 0, 0.0, &s.error);
    nodes += 15;
    return s;
  };

  std::priority_queue<segment, std::vector<segment>, worse> work;
  T total{};
  double total_err = 0.0;
  auto pts = partition_points(a, b, breakpoints);
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    segment s = apply(pts[i], pts[i + 1]);
    total += s.value;
    total_err += s.error;
    work.push(s);
  }

  const double min_width = 1e-13 * (b - a);
  while (total_err > abs_tol && nodes + 30 <= max_nodes && !work.empty()) {
    segment s = work.top();
    if (s.hi - s.lo < min_width) break;  // cannot refine further
    work.pop();
    total -= s.value;
    total_err -= s.error;
    const double mid = 0.5 * (s.lo + s.hi);
    segment l = apply(s.lo, mid);
    segment r = apply(mid, s.hi);
    total += l.value + r.value;
    total_err += l.error + r.error;
    work.push(l);
    work.push(r);
  }

  out.value = total;
  out.error = total_err;
  out.nodes = nodes;
  out.converged = total_err <= abs_tol;
  return out;
}

/// As integrate_adaptive but throws numeric_error on non-convergence.
template <class F>
quad_result<detail::quad_value_t<F>> integrate_or_throw(
    F&& f, double a, double b, const std::vector<double>& breakpoints,
    double abs_tol, std::size_t max_nodes = 100000) {
  auto r = integrate_adaptive(std::forward<F>(f), a, b, breakpoints, abs_tol, max_nodes);
  if (!r.converged) {
    std::ostringstream os;
    os << "quadrature failed to reach tolerance " << abs_tol << " (error estimate " << r.error
       << ", nodes " << r.nodes << ")";
    throw numeric_error(os.str());
  }
  return r;
}

}  // namespace levyts
