#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "levyts/forward_price.hpp"
#include "levyts/quad.hpp"
#include "levyts/rng.hpp"
#include "oracles.hpp"

using levyts::complex;
using levyts::composition_spec;
using levyts::eta_function;
using levyts::forward_price_model;
using levyts::levy_model;
using levyts::tenor_structure;

namespace {

forward_price_model brownian_fp_constant_eta(double eta, int periods = 4) {
  std::vector<double> dates;
  for (int i = 0; i <= periods; ++i) dates.push_back(0.25 * (i + 1));
  std::vector<eta_function> etas(static_cast<std::size_t>(periods),
                                 eta_function::constant(eta));
  return forward_price_model(levy_model::brownian(0.0, 1.0), tenor_structure(dates), etas,
                             fixtures::flat_curve());
}

}  // namespace

TEST_CASE("tenor reversal is an involution") {
  auto tenor = fixtures::quarterly_tenor(0.25, 2.0);
  const int n = tenor.periods();
  for (int i = 1; i <= n + 1; ++i) {
    const int j = n + 1 - i;
    CHECK(tenor.reversed_date(j) == tenor.date(i));
    CHECK(tenor.reversed_date(n + 1 - (n + 1 - i)) == tenor.date(i));
  }
  for (int j = 1; j <= n; ++j) {
    CHECK(tenor.reversed_fixing(j) == tenor.fixing(n + 1 - j));
  }
}

TEST_CASE("tenor validation") {
  CHECK_THROWS_AS(tenor_structure({1.0, 0.5}), levyts::feasibility_error);
  CHECK_THROWS_AS(tenor_structure({1.0, 2.0}, {1.5}), levyts::feasibility_error);  // s > T
  CHECK_THROWS_AS(tenor_structure({1.0, 2.0, 3.0}, {0.9, 0.8}), levyts::feasibility_error);
  CHECK_THROWS_AS(composition_spec(tenor_structure({1.0, 2.0}), -0.5),
                  levyts::feasibility_error);
}

TEST_CASE("measure change factor") {
  auto m = brownian_fp_constant_eta(0.1);
  // j = 1: empty product
  CHECK(m.jump_tilt(0.1, 1.7, 1) == 1.0);
  // x = 0
  CHECK(m.jump_tilt(0.1, 0.0, 3) == 1.0);
  // j = 3 with eta_1 = eta_2 = 0.1 at x = 1
  CHECK(m.jump_tilt(0.1, 1.0, 3) == doctest::Approx(std::exp(0.2)).epsilon(1e-12));
  // positivity
  for (double x : {-8.0, -1.0, 0.3, 5.0}) CHECK(m.jump_tilt(0.2, x, 4) > 0.0);
  // brownian shift
  CHECK(m.brownian_shift(0.1, 3) == doctest::Approx(0.2).epsilon(1e-12));
}

TEST_CASE("drift closed forms for the gaussian driver") {
  auto m = brownian_fp_constant_eta(0.1);
  SUBCASE("zero eta gives zero drift") {
    auto z = fixtures::fp_zero_vol(fixtures::quarterly_tenor(0.25, 1.0));
    CHECK(z.forward_drift(0.1, 1) == 0.0);
    CHECK(z.terminal_drift(0.1, 2) == 0.0);
  }
  SUBCASE("forward drift is -eta^2 c / 2") {
    CHECK(m.forward_drift(0.1, 1) == doctest::Approx(-0.005).epsilon(1e-12));
  }
  SUBCASE("terminal drift adds the covariance with the preceding etas") {
    // j = 3: sum of the two preceding etas is 0.2
    CHECK(m.terminal_drift(0.1, 3) == doctest::Approx(-(0.005 + 0.02)).epsilon(1e-12));
  }
  SUBCASE("j = 1 terminal and forward drifts coincide") {
    for (double s : {0.0, 0.2, 0.24}) {
      CHECK(m.terminal_drift(s, 1) == doctest::Approx(m.forward_drift(s, 1)).epsilon(1e-15));
    }
  }
}

TEST_CASE("nig forward drift matches the tilted-density quadrature") {
  auto tenor = fixtures::quarterly_tenor(0.25, 1.0);
  auto m = fixtures::fp_nig(tenor);
  const levyts::nig_law law{0.6, 0.15, 0.62, -0.62 * 0.15 / std::sqrt(0.36 - 0.0225)};
  const double s = 0.1;
  const int j = 3;
  const double u = m.eta(s, j);
  const double tilt = m.cumulative_eta_below(s, j);
  REQUIRE(u != 0.0);
  const complex jump = oracles::nig_tilted_jump_integral(law, complex(u), tilt);
  CHECK(m.forward_drift(s, j) == doctest::Approx(-jump.real()).epsilon(1e-7));
}

TEST_CASE("terminal minus forward drift equals the girsanov correction") {
  auto tenor = fixtures::quarterly_tenor(0.25, 1.0);
  auto m = fixtures::fp_nig(tenor);
  const levyts::nig_law law{0.6, 0.15, 0.62, -0.62 * 0.15 / std::sqrt(0.36 - 0.0225)};
  const int j = 2;
  levyts::counter_rng rng(7, 0, 0);
  for (int k = 0; k < 100; ++k) {
    const double s = rng.uniform() * tenor.reversed_fixing(j);
    const double u = m.eta(s, j);
    const double tilt = m.cumulative_eta_below(s, j);
    // finite-variation rate of the driver under the preceding forward
    // measure: c*tilt + int x (e^{tilt x} - 1) nu(dx), c = 0 for NIG
    const double fv_rate = oracles::nig_drift_correction(law, tilt);
    const double correction = -u * fv_rate;
    CHECK(m.terminal_drift(s, j) - m.forward_drift(s, j) ==
          doctest::Approx(correction).epsilon(1e-8));
  }
}

TEST_CASE("fp model validation") {
  auto tenor = fixtures::quarterly_tenor(0.25, 1.0);
  SUBCASE("driver must be centered") {
    std::vector<eta_function> etas(4, eta_function::constant(0.001));
    CHECK_THROWS_AS(forward_price_model(levy_model::brownian(0.1, 1.0), tenor, etas,
                                        fixtures::flat_curve()),
                    levyts::feasibility_error);
  }
  SUBCASE("cumulative volatility cap") {
    auto driver = levy_model::nig(0.6, 0.0, 0.62, 0.0, levyts::em_bound{0.05, 0.1}).centered();
    std::vector<eta_function> etas(4, eta_function::constant(0.02));  // cumulative 0.08 > M
    CHECK_THROWS_AS(forward_price_model(driver, tenor, etas, fixtures::flat_curve()),
                    levyts::feasibility_error);
  }
  SUBCASE("one eta per period") {
    std::vector<eta_function> etas(3, eta_function::constant(0.001));
    CHECK_THROWS_AS(forward_price_model(levy_model::brownian(0.0, 1.0), tenor, etas,
                                        fixtures::flat_curve()),
                    levyts::feasibility_error);
  }
}

TEST_CASE("composition constant") {
  SUBCASE("zero eta leaves only log Z") {
    auto tenor = fixtures::quarterly_tenor(0.25, 1.0);
    auto m = fixtures::fp_zero_vol(tenor);
    composition_spec spec(tenor, 1.01);
    CHECK(m.composition_constant(spec) == doctest::Approx(0.04).epsilon(1e-12));
  }
  SUBCASE("flat curve: log Z equals rate times composition span") {
    auto tenor = fixtures::quarterly_tenor(0.25, 1.0);
    auto m = fixtures::fp_nig(tenor);
    composition_spec spec(tenor, 1.01);
    const double log_z = std::log(m.curve()(0.25) / m.curve()(1.25));
    CHECK(log_z == doctest::Approx(0.04).epsilon(1e-12));
  }
  SUBCASE("gaussian constant etas by hand") {
    const double eta = 0.1;
    auto m = brownian_fp_constant_eta(eta);
    composition_spec spec(m.tenor(), 1.01);
    // sum_j int_0^{s*_j} -c(eta^2/2 + eta * (j-1) eta) ds with s*_j the
    // reversed fixings
    double expect = std::log(m.curve()(0.25) / m.curve()(1.25));
    for (int j = 1; j <= 4; ++j) {
      const double sj = m.tenor().reversed_fixing(j);
      expect += -sj * (0.5 * eta * eta + eta * eta * (j - 1));
    }
    CHECK(m.composition_constant(spec) == doctest::Approx(expect).epsilon(1e-10));
  }
}

namespace {

void check_fp_mgf(const forward_price_model& model) {
  composition_spec spec(model.tenor(), 1.02);
  const auto bound = model.strip_bound();
  CHECK(std::abs(model.mgf(spec, bound, complex(0.0)) - complex(1.0)) < 1e-10);
  const double z_ratio = model.curve()(model.tenor().first_date()) /
                         model.curve()(model.tenor().settlement());
  const complex m1 = model.mgf(spec, bound, complex(1.0));
  CHECK(std::abs(m1.real() / z_ratio - 1.0) < 1e-8);
  CHECK(std::abs(m1.imag()) < 1e-12);
  // conjugate symmetry
  const complex up = model.mgf(spec, bound, complex(0.8, 1.5));
  const complex dn = model.mgf(spec, bound, complex(0.8, -1.5));
  CHECK(std::abs(up - std::conj(dn)) < 1e-12);
  CHECK_THROWS_AS((void)model.mgf(spec, bound, complex(bound.hi * 1.5)), levyts::strip_error);
}

}  // namespace

TEST_CASE("fp mgf identities, nig driver") {
  check_fp_mgf(fixtures::fp_nig(fixtures::quarterly_tenor(0.25, 1.0)));
}

TEST_CASE("fp mgf identities, brownian driver") {
  check_fp_mgf(fixtures::fp_brownian(fixtures::quarterly_tenor(0.25, 1.0)));
}

TEST_CASE("fp strip bound") {
  auto tenor = fixtures::quarterly_tenor(0.25, 1.0);
  auto m = fixtures::fp_nig(tenor);
  auto b = m.strip_bound();
  CHECK(b.m_prime > 0.0);
  CHECK(b.hi == doctest::Approx(m.driver().em().M / b.m_prime));
  CHECK(b.lo == doctest::Approx(-b.hi));
  CHECK(b.hi > 1.0);  // cap pricing feasible for this setup
}

TEST_CASE("spec tenor must match the model tenor") {
  auto m = fixtures::fp_nig(fixtures::quarterly_tenor(0.25, 1.0));
  composition_spec other(fixtures::quarterly_tenor(0.5, 1.0), 1.02);
  CHECK_THROWS_AS((void)m.composition_constant(other), levyts::feasibility_error);
}
