#include "levyts/mc.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "levyts/quad.hpp"
#include "levyts/rng.hpp"

namespace levyts {

namespace {

constexpr std::size_t kBatch = 4096;  // fixed batch size keeps reductions scheduling-independent

struct cell_sampler {
  // gaussian: x = p0 + p1 * z
  // nig:      x = p0 + p1 * ig + sqrt(ig) * z,  ig ~ IG(mean p2, shape p3)
  enum class family { gaussian, nig } kind;
  double p0, p1, p2, p3;

  double draw(counter_rng& rng) const {
    if (kind == family::gaussian) return p0 + p1 * rng.normal();
    const double ig = sample_inverse_gaussian(rng, p2, p3);
    return p0 + p1 * ig + std::sqrt(ig) * rng.normal();
  }
};

// Per-cell law with the Esscher tilt u frozen at the cell's left edge.
std::vector<cell_sampler> compile_driver(const levy_model& model, const path_grid& grid,
                                         const std::function<double(double)>& tilt) {
  std::vector<cell_sampler> cells;
  cells.reserve(grid.cells());
  for (std::size_t k = 0; k < grid.cells(); ++k) {
    const double lo = grid.edges[k];
    const double dt = grid.edges[k + 1] - lo;
    const double u = tilt ? tilt(lo) : 0.0;
    const segment_law law = law_tilted(model.law_at(lo), u);
    cell_sampler c{};
    if (const auto* bm = std::get_if<brownian_law>(&law)) {
      c.kind = cell_sampler::family::gaussian;
      c.p0 = bm->drift * dt;
      c.p1 = std::sqrt(bm->variance * dt);
    } else {
      const auto& n = std::get<nig_law>(law);
      if (!(std::abs(n.beta) < n.alpha)) {
        throw feasibility_error("measure tilt pushes the NIG driver outside its moment domain");
      }
      const double gamma = n.gamma();
      const double d = n.delta * dt;
      c.kind = cell_sampler::family::nig;
      c.p0 = n.mu * dt;
      c.p1 = n.beta;
      c.p2 = d / gamma;
      c.p3 = d * d;
    }
    cells.push_back(c);
  }
  return cells;
}

struct accumulator {
  double sum = 0.0;
  double sumsq = 0.0;
};

// Streams every path once: draws the cell increments, forms the requested
// linear functionals y_i = sum_k w_i[k] dL_k, and feeds them to the payoff.
// Batches have a fixed size and are reduced in index order, so the result
// is bit-identical for any thread count.
std::vector<accumulator> run_paths(const std::vector<cell_sampler>& cells,
                                   const std::vector<std::vector<double>>& weights,
                                   std::size_t paths, std::uint64_t seed, int threads,
                                   std::size_t n_outputs,
                                   const std::function<void(const double*, double*)>& payoff) {
  const std::size_t n_batches = (paths + kBatch - 1) / kBatch;
  const std::size_t n_weights = weights.size();
  std::vector<std::vector<accumulator>> batch_accs(n_batches,
                                                   std::vector<accumulator>(n_outputs));

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    std::vector<double> y(n_weights);
    std::vector<double> out(n_outputs);
    for (;;) {
      const std::size_t b = next.fetch_add(1);
      if (b >= n_batches) return;
      auto& accs = batch_accs[b];
      const std::size_t lo = b * kBatch;
      const std::size_t hi = std::min(lo + kBatch, paths);
      for (std::size_t p = lo; p < hi; ++p) {
        std::fill(y.begin(), y.end(), 0.0);
        for (std::size_t k = 0; k < cells.size(); ++k) {
          counter_rng rng(seed, p, k);
          const double x = cells[k].draw(rng);
          for (std::size_t i = 0; i < n_weights; ++i) y[i] += weights[i][k] * x;
        }
        payoff(y.data(), out.data());
        for (std::size_t i = 0; i < n_outputs; ++i) {
          accs[i].sum += out[i];
          accs[i].sumsq += out[i] * out[i];
        }
      }
    }
  };

  int n_threads = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
  n_threads = std::max(1, std::min<int>(n_threads, static_cast<int>(n_batches)));
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(n_threads));
    for (int i = 0; i < n_threads; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  std::vector<accumulator> total(n_outputs);
  for (std::size_t b = 0; b < n_batches; ++b) {
    for (std::size_t i = 0; i < n_outputs; ++i) {
      total[i].sum += batch_accs[b][i].sum;
      total[i].sumsq += batch_accs[b][i].sumsq;
    }
  }
  return total;
}

mc_estimate to_estimate(const accumulator& a, std::size_t paths, std::uint64_t seed) {
  mc_estimate e;
  e.paths = paths;
  e.seed = seed;
  e.mean = a.sum / static_cast<double>(paths);
  const double var =
      std::max(0.0, (a.sumsq - static_cast<double>(paths) * e.mean * e.mean) /
                        (static_cast<double>(paths) - 1.0));
  e.se = std::sqrt(var / static_cast<double>(paths));
  return e;
}

void validate_plan(const simulation_plan& plan) {
  if (plan.paths < 1000) throw feasibility_error("simulation plans need at least 1000 paths");
  if (!(plan.cells_per_year > 0.0)) throw feasibility_error("cells_per_year must be positive");
}

std::vector<double> left_edges_weights(const path_grid& grid,
                                       const std::function<double(double)>& w) {
  std::vector<double> out(grid.cells());
  for (std::size_t k = 0; k < grid.cells(); ++k) out[k] = w(grid.edges[k]);
  return out;
}

}  // namespace

path_grid build_grid(double horizon, double cells_per_year, std::vector<double> breakpoints) {
  if (!(horizon > 0.0)) throw feasibility_error("grid horizon must be positive");
  path_grid g;
  const std::size_t n = std::max<std::size_t>(1, static_cast<std::size_t>(
                                                     std::ceil(horizon * cells_per_year)));
  g.edges.reserve(n + breakpoints.size() + 2);
  for (std::size_t k = 0; k <= n; ++k) {
    g.edges.push_back(horizon * static_cast<double>(k) / static_cast<double>(n));
  }
  for (double b : breakpoints) {
    if (b > 0.0 && b < horizon) g.edges.push_back(b);
  }
  std::sort(g.edges.begin(), g.edges.end());
  g.edges.erase(std::unique(g.edges.begin(), g.edges.end(),
                            [&](double x, double y) { return y - x < 1e-12 * (1.0 + horizon); }),
                g.edges.end());
  // keep the exact endpoints
  g.edges.front() = 0.0;
  g.edges.back() = horizon;
  return g;
}

std::vector<double> simulate_increments(const levy_model& model, const path_grid& grid,
                                        std::uint64_t seed, std::uint64_t path) {
  const auto cells = compile_driver(model, grid, nullptr);
  std::vector<double> out(cells.size());
  for (std::size_t k = 0; k < cells.size(); ++k) {
    counter_rng rng(seed, path, k);
    out[k] = cells[k].draw(rng);
  }
  return out;
}

std::vector<mc_estimate> mc_cap_prices(const hjm_model& model, const composition_spec& spec,
                                       const std::vector<double>& strikes,
                                       const simulation_plan& plan) {
  validate_plan(plan);
  if (plan.measure != mc_measure::terminal) {
    throw feasibility_error("composition pricing simulates under the terminal forward measure");
  }
  const double discount = model.curve()(spec.tenor.settlement());
  std::vector<mc_estimate> out(strikes.size());

  if (model.vol().is_zero()) {
    const double z = model.deterministic_value(spec);
    for (std::size_t i = 0; i < strikes.size(); ++i) {
      out[i] = mc_estimate{discount * std::max(z - strikes[i], 0.0), 0.0, plan.paths, plan.seed};
    }
    return out;
  }

  const auto terms = model.composition(spec);
  auto breaks = terms.breakpoints;
  for (double b : model.driver().breakpoints()) breaks.push_back(b);
  const path_grid grid = build_grid(terms.last_fixing, plan.cells_per_year, breaks);

  const double t_star = spec.tenor.settlement();
  auto tilt = [&](double s) { return model.vol().integrated(s, t_star); };
  const auto cells = compile_driver(model.driver(), grid, tilt);
  const std::vector<std::vector<double>> weights{left_edges_weights(grid, terms.loading)};

  const double constant = terms.constant;
  auto payoff = [&](const double* y, double* o) {
    const double value = std::exp(constant + y[0]);
    for (std::size_t i = 0; i < strikes.size(); ++i) {
      o[i] = discount * std::max(value - strikes[i], 0.0);
    }
  };
  const auto accs =
      run_paths(cells, weights, plan.paths, plan.seed, plan.threads, strikes.size(), payoff);
  for (std::size_t i = 0; i < strikes.size(); ++i) {
    out[i] = to_estimate(accs[i], plan.paths, plan.seed);
  }
  return out;
}

std::vector<mc_estimate> mc_cap_prices(const forward_price_model& model,
                                       const composition_spec& spec,
                                       const std::vector<double>& strikes,
                                       const simulation_plan& plan) {
  validate_plan(plan);
  if (plan.measure != mc_measure::terminal) {
    throw feasibility_error("composition pricing simulates under the terminal forward measure");
  }
  const double discount = model.curve()(spec.tenor.settlement());
  std::vector<mc_estimate> out(strikes.size());

  if (model.vol_is_zero()) {
    const double z = model.deterministic_value(spec);
    for (std::size_t i = 0; i < strikes.size(); ++i) {
      out[i] = mc_estimate{discount * std::max(z - strikes[i], 0.0), 0.0, plan.paths, plan.seed};
    }
    return out;
  }

  const tenor_structure& tenor = model.tenor();
  const int n = tenor.periods();
  std::vector<double> breaks = tenor.fixings();
  for (int i = 1; i <= n + 1; ++i) breaks.push_back(tenor.date(i));
  for (double b : model.driver().breakpoints()) breaks.push_back(b);
  for (double b : model.eta_knots()) breaks.push_back(b);
  const path_grid grid = build_grid(tenor.last_fixing(), plan.cells_per_year, breaks);

  const auto cells = compile_driver(model.driver(), grid, nullptr);
  auto eta_sum = [&](double s) {
    double acc = 0.0;
    for (int j = 1; j <= n && s <= tenor.reversed_fixing(j); ++j) acc += model.eta(s, j);
    return acc;
  };
  const std::vector<std::vector<double>> weights{left_edges_weights(grid, eta_sum)};
  const double constant = model.composition_constant(spec);

  auto payoff = [&](const double* y, double* o) {
    const double value = std::exp(constant + y[0]);
    for (std::size_t i = 0; i < strikes.size(); ++i) {
      o[i] = discount * std::max(value - strikes[i], 0.0);
    }
  };
  const auto accs =
      run_paths(cells, weights, plan.paths, plan.seed, plan.threads, strikes.size(), payoff);
  for (std::size_t i = 0; i < strikes.size(); ++i) {
    out[i] = to_estimate(accs[i], plan.paths, plan.seed);
  }
  return out;
}

mc_estimate mc_cap_price(const hjm_model& model, const composition_spec& spec,
                         const simulation_plan& plan) {
  return mc_cap_prices(model, spec, {spec.level}, plan).front();
}

mc_estimate mc_cap_price(const forward_price_model& model, const composition_spec& spec,
                         const simulation_plan& plan) {
  return mc_cap_prices(model, spec, {spec.level}, plan).front();
}

namespace {

mc_complex_estimate exp_moment_from_h(const std::vector<cell_sampler>& cells,
                                      const std::vector<std::vector<double>>& weights,
                                      double constant, complex z, const simulation_plan& plan) {
  auto payoff = [&](const double* y, double* o) {
    const complex v = std::exp(z * (constant + y[0]));
    o[0] = v.real();
    o[1] = v.imag();
  };
  const auto accs = run_paths(cells, weights, plan.paths, plan.seed, plan.threads, 2, payoff);
  const mc_estimate re = to_estimate(accs[0], plan.paths, plan.seed);
  const mc_estimate im = to_estimate(accs[1], plan.paths, plan.seed);
  return mc_complex_estimate{complex(re.mean, im.mean), re.se, im.se, plan.paths, plan.seed};
}

}  // namespace

mc_complex_estimate mc_mgf(const hjm_model& model, const composition_spec& spec,
                           const simulation_plan& plan, complex z) {
  validate_plan(plan);
  if (model.vol().is_zero()) {
    const complex v = std::exp(z * std::log(model.deterministic_value(spec)));
    return mc_complex_estimate{v, 0.0, 0.0, plan.paths, plan.seed};
  }
  const auto terms = model.composition(spec);
  auto breaks = terms.breakpoints;
  for (double b : model.driver().breakpoints()) breaks.push_back(b);
  const path_grid grid = build_grid(terms.last_fixing, plan.cells_per_year, breaks);
  const double t_star = spec.tenor.settlement();
  auto tilt = [&](double s) { return model.vol().integrated(s, t_star); };
  const auto cells = compile_driver(model.driver(), grid, tilt);
  const std::vector<std::vector<double>> weights{left_edges_weights(grid, terms.loading)};
  return exp_moment_from_h(cells, weights, terms.constant, z, plan);
}

mc_complex_estimate mc_mgf(const forward_price_model& model, const composition_spec& spec,
                           const simulation_plan& plan, complex z) {
  validate_plan(plan);
  if (model.vol_is_zero()) {
    const complex v = std::exp(z * std::log(model.deterministic_value(spec)));
    return mc_complex_estimate{v, 0.0, 0.0, plan.paths, plan.seed};
  }
  const tenor_structure& tenor = model.tenor();
  const int n = tenor.periods();
  std::vector<double> breaks = tenor.fixings();
  for (int i = 1; i <= n + 1; ++i) breaks.push_back(tenor.date(i));
  for (double b : model.driver().breakpoints()) breaks.push_back(b);
  for (double b : model.eta_knots()) breaks.push_back(b);
  const path_grid grid = build_grid(tenor.last_fixing(), plan.cells_per_year, breaks);
  const auto cells = compile_driver(model.driver(), grid, nullptr);
  auto eta_sum = [&](double s) {
    double acc = 0.0;
    for (int j = 1; j <= n && s <= tenor.reversed_fixing(j); ++j) acc += model.eta(s, j);
    return acc;
  };
  const std::vector<std::vector<double>> weights{left_edges_weights(grid, eta_sum)};
  return exp_moment_from_h(cells, weights, model.composition_constant(spec), z, plan);
}

mc_complex_estimate mc_exp_integral(const levy_model& model, const time_function& f, double t,
                                    const simulation_plan& plan) {
  validate_plan(plan);
  std::vector<double> breaks = f.breakpoints;
  for (double b : model.breakpoints()) breaks.push_back(b);
  const path_grid grid = build_grid(t, plan.cells_per_year, breaks);
  const auto cells = compile_driver(model, grid, nullptr);
  std::vector<std::vector<double>> weights(2, std::vector<double>(grid.cells()));
  for (std::size_t k = 0; k < grid.cells(); ++k) {
    const complex v = f.value(grid.edges[k]);
    weights[0][k] = v.real();
    weights[1][k] = v.imag();
  }
  auto payoff = [&](const double* y, double* o) {
    const complex v = std::exp(complex(y[0], y[1]));
    o[0] = v.real();
    o[1] = v.imag();
  };
  const auto accs = run_paths(cells, weights, plan.paths, plan.seed, plan.threads, 2, payoff);
  const mc_estimate re = to_estimate(accs[0], plan.paths, plan.seed);
  const mc_estimate im = to_estimate(accs[1], plan.paths, plan.seed);
  return mc_complex_estimate{complex(re.mean, im.mean), re.se, im.se, plan.paths, plan.seed};
}

mc_estimate mc_cap_price_density_weighted(const hjm_model& model, const composition_spec& spec,
                                          const simulation_plan& plan) {
  validate_plan(plan);
  const double t_star = spec.tenor.settlement();
  const double discount = model.curve()(t_star);
  const auto terms = model.composition(spec);
  auto breaks = terms.breakpoints;
  for (double b : model.driver().breakpoints()) breaks.push_back(b);
  const path_grid grid = build_grid(t_star, plan.cells_per_year, breaks);
  const auto cells = compile_driver(model.driver(), grid, nullptr);  // physical measure

  auto sigma_star = [&](double s) { return model.vol().integrated(s, t_star); };
  const std::vector<std::vector<double>> weights{left_edges_weights(grid, terms.loading),
                                                 left_edges_weights(grid, sigma_star)};
  const auto a_int = integrate_or_throw(
      [&](double s) { return model.drift(s, t_star); }, 0.0, t_star,
      model.driver().breakpoints(), 1e-12);
  const double log_density_const = -a_int.value;
  const double constant = terms.constant;
  const double strike = spec.level;

  auto payoff = [&](const double* y, double* o) {
    const double density = std::exp(log_density_const + y[1]);
    o[0] = discount * std::max(std::exp(constant + y[0]) - strike, 0.0) * density;
  };
  const auto accs = run_paths(cells, weights, plan.paths, plan.seed, plan.threads, 1, payoff);
  return to_estimate(accs[0], plan.paths, plan.seed);
}

std::vector<martingale_row> martingale_report(const hjm_model& model,
                                              const std::vector<double>& ts,
                                              const std::vector<double>& maturities,
                                              const simulation_plan& plan) {
  validate_plan(plan);
  std::vector<martingale_row> rows;
  for (double t : ts) {
    const path_grid grid = build_grid(t, plan.cells_per_year, model.driver().breakpoints());
    const auto cells = compile_driver(model.driver(), grid, nullptr);
    std::vector<std::vector<double>> weights;
    std::vector<double> constants;
    for (double T : maturities) {
      weights.push_back(left_edges_weights(
          grid, [&](double s) { return model.vol().integrated(s, T); }));
      const auto a_int = integrate_or_throw([&](double s) { return model.drift(s, T); }, 0.0, t,
                                            model.driver().breakpoints(), 1e-12);
      constants.push_back(-a_int.value);
    }
    auto payoff = [&](const double* y, double* o) {
      for (std::size_t i = 0; i < constants.size(); ++i) {
        o[i] = std::exp(constants[i] + y[i]);
      }
    };
    const auto accs =
        run_paths(cells, weights, plan.paths, plan.seed, plan.threads, constants.size(), payoff);
    for (std::size_t i = 0; i < maturities.size(); ++i) {
      const double b0 = model.curve()(maturities[i]);
      mc_estimate e = to_estimate(accs[i], plan.paths, plan.seed);
      e.mean *= b0;
      e.se *= b0;
      martingale_row row;
      row.instrument = "discounted_bond_T=" + std::to_string(maturities[i]);
      row.t = t;
      row.mc_mean = e.mean;
      row.se = e.se;
      row.initial = b0;
      row.deviation_se = e.se > 0.0 ? std::abs(e.mean - row.initial) / e.se : 0.0;
      rows.push_back(row);
    }
  }
  return rows;
}

std::vector<martingale_row> martingale_report(const forward_price_model& model,
                                              const std::vector<int>& reversed_indices,
                                              const simulation_plan& plan) {
  validate_plan(plan);
  std::vector<martingale_row> rows;
  const tenor_structure& tenor = model.tenor();
  for (int j : reversed_indices) {
    const double t = tenor.reversed_fixing(j);  // evaluate at the rate's fixing
    std::vector<double> breaks = model.eta_knots();
    for (double b : model.driver().breakpoints()) breaks.push_back(b);
    const path_grid grid = build_grid(t, plan.cells_per_year, breaks);
    // simulate under P_{T*_{j-1}}: cumulative tilt of the preceding etas
    auto tilt = [&](double s) { return model.cumulative_eta_below(s, j); };
    const auto cells = compile_driver(model.driver(), grid, tilt);
    const std::vector<std::vector<double>> weights{
        left_edges_weights(grid, [&](double s) { return model.eta(s, j); })};
    const auto b_int = integrate_or_throw([&](double s) { return model.terminal_drift(s, j); },
                                          0.0, t, breaks, 1e-12);
    const double f0 = model.initial_forward(j);
    const double constant = b_int.value;
    auto payoff = [&](const double* y, double* o) { o[0] = f0 * std::exp(constant + y[0]); };
    const auto accs = run_paths(cells, weights, plan.paths, plan.seed, plan.threads, 1, payoff);
    mc_estimate e = to_estimate(accs[0], plan.paths, plan.seed);
    martingale_row row;
    row.instrument = "forward_price_j=" + std::to_string(j);
    row.t = t;
    row.mc_mean = e.mean;
    row.se = e.se;
    row.initial = f0;
    row.deviation_se = e.se > 0.0 ? std::abs(e.mean - row.initial) / e.se : 0.0;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace levyts
