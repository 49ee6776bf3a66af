#include <doctest.h>

#include <cmath>
#include <complex>

#include "levyts/quad.hpp"

using levyts::integrate_adaptive;
using levyts::integrate_or_throw;

TEST_CASE("polynomial integrates exactly") {
  auto r = integrate_adaptive([](double x) { return 3.0 * x * x; }, 0.0, 2.0, {}, 1e-12);
  CHECK(r.converged);
  CHECK(r.value == doctest::Approx(8.0).epsilon(1e-13));
  CHECK(r.error <= 1e-12);
  CHECK(r.nodes >= 15);
}

TEST_CASE("complex oscillatory integrand") {
  // int_0^1 e^{i a x} dx = (e^{ia} - 1)/(ia)
  const double a = 37.0;
  auto r = integrate_or_throw(
      [&](double x) { return std::exp(std::complex<double>(0.0, a * x)); }, 0.0, 1.0, {}, 1e-12);
  const std::complex<double> expect =
      (std::exp(std::complex<double>(0.0, a)) - 1.0) / std::complex<double>(0.0, a);
  CHECK(std::abs(r.value - expect) < 1e-11);
}

TEST_CASE("breakpoints let a step function integrate exactly") {
  auto f = [](double x) { return x < 1.0 ? 2.0 : -1.0; };
  auto r = integrate_or_throw(f, 0.0, 3.0, {1.0}, 1e-12);
  CHECK(r.value == doctest::Approx(0.0).epsilon(1e-13));
}

TEST_CASE("kinked integrand needs the breakpoint") {
  auto f = [](double x) { return std::abs(x - 0.3141); };
  auto with_bp = integrate_or_throw(f, 0.0, 1.0, {0.3141}, 1e-13);
  const double exact = 0.5 * (0.3141 * 0.3141 + (1.0 - 0.3141) * (1.0 - 0.3141));
  CHECK(with_bp.value == doctest::Approx(exact).epsilon(1e-12));
}

TEST_CASE("node budget is respected and reported") {
  // genuinely hard integrand at an impossible tolerance
  auto r = integrate_adaptive([](double x) { return std::cos(5000.0 * x * x); }, 0.0, 10.0, {},
                              1e-16, 600);
  CHECK_FALSE(r.converged);
  CHECK(r.nodes <= 600);
  CHECK_THROWS_AS((void)integrate_or_throw([](double x) { return std::cos(5000.0 * x * x); }, 0.0,
                                           10.0, {}, 1e-16, 600),
                  levyts::numeric_error);
}

TEST_CASE("empty interval") {
  auto r = integrate_adaptive([](double) { return 1.0; }, 1.0, 1.0, {}, 1e-12);
  CHECK(r.converged);
  CHECK(r.value == 0.0);
}
