#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "levyts/forward_price.hpp"
#include "levyts/hjm.hpp"
#include "levyts/levy.hpp"

namespace levyts {

/// Which measure the driver increments are drawn under.
enum class mc_measure { physical, terminal, forward };

struct simulation_plan {
  std::size_t paths = 100000;
  std::uint64_t seed = 1;
  double cells_per_year = 500.0;
  mc_measure measure = mc_measure::terminal;
  int forward_index = 1;  // j for mc_measure::forward
  int threads = 0;        // 0: hardware concurrency
};

struct mc_estimate {
  double mean = 0.0;
  double se = 0.0;  // sample standard deviation / sqrt(paths)
  std::size_t paths = 0;
  std::uint64_t seed = 0;
};

struct mc_complex_estimate {
  complex mean{0.0, 0.0};
  double se_real = 0.0;
  double se_imag = 0.0;
  std::size_t paths = 0;
  std::uint64_t seed = 0;
};

/// Simulation grid; cell k spans [edges[k], edges[k+1]).
struct path_grid {
  std::vector<double> edges;
  std::size_t cells() const { return edges.empty() ? 0 : edges.size() - 1; }
};

/// Uniform grid of the requested density with every breakpoint inserted.
path_grid build_grid(double horizon, double cells_per_year, std::vector<double> breakpoints);

/// Driver increments over the grid cells under the model's own measure;
/// bit-deterministic in (seed, path, cell).
std::vector<double> simulate_increments(const levy_model& model, const path_grid& grid,
                                        std::uint64_t seed, std::uint64_t path);

/// Cap prices, one estimate per strike, sharing the same paths.
/// Requires plan.measure == terminal; the forward-rate driver is re-drifted
/// to its T*-forward-measure characteristics cell by cell.
std::vector<mc_estimate> mc_cap_prices(const hjm_model& model, const composition_spec& spec,
                                       const std::vector<double>& strikes,
                                       const simulation_plan& plan);
std::vector<mc_estimate> mc_cap_prices(const forward_price_model& model,
                                       const composition_spec& spec,
                                       const std::vector<double>& strikes,
                                       const simulation_plan& plan);
mc_estimate mc_cap_price(const hjm_model& model, const composition_spec& spec,
                         const simulation_plan& plan);
mc_estimate mc_cap_price(const forward_price_model& model, const composition_spec& spec,
                         const simulation_plan& plan);

/// E[e^{zH}] under the terminal measure.
mc_complex_estimate mc_mgf(const hjm_model& model, const composition_spec& spec,
                           const simulation_plan& plan, complex z);
mc_complex_estimate mc_mgf(const forward_price_model& model, const composition_spec& spec,
                           const simulation_plan& plan, complex z);

/// E[exp(int_0^t f dL)] under the physical measure; the analytic twin is
/// exp(integrated_cumulant(model, f, t)).
mc_complex_estimate mc_exp_integral(const levy_model& model, const time_function& f, double t,
                                    const simulation_plan& plan);

/// Physical-measure cap estimate weighted by the terminal-measure density;
/// cross-validates the measure change against direct terminal sampling.
mc_estimate mc_cap_price_density_weighted(const hjm_model& model, const composition_spec& spec,
                                          const simulation_plan& plan);

struct martingale_row {
  std::string instrument;
  double t = 0.0;
  double mc_mean = 0.0;
  double se = 0.0;
  double initial = 0.0;
  double deviation_se = 0.0;  // |mc_mean - initial| / se
};

/// Discounted bonds B(t,T)/B^M_t under the physical measure against B(0,T).
std::vector<martingale_row> martingale_report(const hjm_model& model,
                                              const std::vector<double>& ts,
                                              const std::vector<double>& maturities,
                                              const simulation_plan& plan);
/// Forward prices F(., T*_j, T*_{j-1}) under their own forward measures,
/// evaluated at their fixing dates, against F(0, ., .).
std::vector<martingale_row> martingale_report(const forward_price_model& model,
                                              const std::vector<int>& reversed_indices,
                                              const simulation_plan& plan);

}  // namespace levyts
