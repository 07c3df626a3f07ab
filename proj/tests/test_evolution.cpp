#include <doctest.h>

#include <cmath>

#include "ibnls/errors.hpp"
#include "ibnls/evolution.hpp"
#include "ibnls/virial.hpp"

using namespace ibnls;

namespace {

RadialField gaussian_field(const GridPtr& grid, double amplitude, double width) {
  Eigen::VectorXcd vals(grid->n());
  for (int i = 0; i < grid->n(); ++i) {
    const double r = grid->nodes()[i];
    vals[i] = amplitude * std::exp(-(r / width) * (r / width));
  }
  return grid->make_field(vals);
}

SimConfig small_gaussian_config() {
  SimConfig config;
  config.dim = 6;
  config.b = 1.0;
  config.r_max = 16.0;
  config.n = 256;
  config.data.amplitude = 0.6;
  config.data.width = 1.0;
  config.horizon = 0.02;
  config.cutoff_radius = 6.0;
  config.dt0 = 1e-4;
  return config;
}

}  // namespace

TEST_CASE("substeps: the nonlinear phase preserves the modulus pointwise") {
  GridPtr grid = RadialGrid::create(make_params(6, 1.0), 12.0, 128);
  RadialField f = gaussian_field(grid, 1.7, 1.0);
  Eigen::VectorXd before = f.values.array().abs();
  apply_nonlinear_phase(*grid, f.values, 0.37);
  Eigen::VectorXd after = f.values.array().abs();
  for (int i = 0; i < grid->n(); ++i) CHECK(after[i] == doctest::Approx(before[i]).epsilon(1e-14));
}

TEST_CASE("substeps: the linear propagator is unitary in the weighted norm") {
  GridPtr grid = RadialGrid::create(make_params(6, 1.0), 12.0, 128);
  RadialField f = gaussian_field(grid, 1.0, 1.2);
  const double mass_before = grid->norm_sq(f.values);
  apply_linear_propagator(*grid, f.values, 0.05);
  CHECK(grid->norm_sq(f.values) == doctest::Approx(mass_before).epsilon(1e-13));
}

TEST_CASE("step: mass drift per step is at machine level") {
  GridPtr grid = RadialGrid::create(make_params(6, 1.0), 12.0, 128);
  SimState state;
  state.u = gaussian_field(grid, 1e-8, 1.0);  // nonlinearity effectively disabled
  const double mass0 = grid->norm_sq(state.u.values);
  SimState next = step(state, 1e-3);
  CHECK(std::abs(grid->norm_sq(next.u.values) - mass0) / mass0 < 1e-12);
  CHECK(next.t == doctest::Approx(1e-3));
  CHECK(next.step_count == 1);
  CHECK_THROWS_AS(step(state, 0.0), InvalidGridSpec);
}

TEST_CASE("step: forward then backward returns the state (splitting symmetry)") {
  GridPtr grid = RadialGrid::create(make_params(6, 1.0), 12.0, 192);
  SimState state;
  state.u = gaussian_field(grid, 1.2, 1.0);
  const Eigen::VectorXcd original = state.u.values;
  SimState forward = step(state, 2e-3);
  SimState back = step(forward, -2e-3);
  CHECK((back.u.values - original).norm() / original.norm() < 1e-8);
}

TEST_CASE("step: second-order energy drift under dt refinement") {
  GridPtr grid = RadialGrid::create(make_params(6, 1.0), 16.0, 192);
  const RadialField u0 = gaussian_field(grid, 0.9, 1.0);
  const double horizon = 0.02;
  const double e0 = report(u0).energy;
  auto drift_at = [&](double dt) {
    SimState state;
    state.u = u0;
    const int steps = static_cast<int>(std::round(horizon / dt));
    for (int k = 0; k < steps; ++k) state = step(state, dt);
    return std::abs(report(state.u).energy - e0) / std::abs(e0);
  };
  const double coarse = drift_at(4e-4);
  const double fine = drift_at(5e-5);
  const double order = std::log(coarse / fine) / std::log(8.0);
  CHECK(order >= 1.9);
}

TEST_CASE("evolve: conservative Gaussian run reaches the horizon with tiny drifts") {
  const SimConfig config = small_gaussian_config();
  const TimeSeries series = evolve(config);
  CHECK(series.termination == Termination::horizon_reached);
  CHECK(series.mass_drift < 1e-6);
  CHECK(series.energy_drift < 1e-6);
  CHECK(series.records.size() >= 16);
  for (size_t i = 1; i < series.records.size(); ++i) {
    CHECK(series.records[i].t > series.records[i - 1].t);
  }
  const BlowupVerdict verdict = detect_blowup(series, config.growth_factor);
  CHECK(verdict.verdict == BlowupVerdict::Verdict::no_blowup_within_horizon);
}

TEST_CASE("evolve: ground-state data stays stationary over a short horizon") {
  SimConfig config;
  config.dim = 6;
  config.b = 1.0;
  config.r_max = 12.0;
  config.n = 192;
  config.data.family = InitialDataSpec::Family::ground_state_multiple;
  config.data.amplitude = 1.0;
  config.gs.seed_width = 1.5;
  config.cutoff_radius = 4.0;

  const ModelParams params = make_params(config.dim, config.b);
  GridPtr grid = RadialGrid::create(params, config.r_max, config.n);
  GroundStateResult gs = solve_ground_state(grid, config.gs);
  RadialField u0 = build_initial_data(grid, config.data, &gs);

  // The nonlinear phase rate at the concentrated profile dictates the step.
  // W is a saddle of the flow, so splitting noise eventually feeds its
  // unstable mode; "short horizon" here means well inside that e-folding
  // time (about sixty steps at this resolution).
  double rate = 0.0;
  for (int i = 0; i < grid->n(); ++i) {
    rate = std::max(rate, grid->r_pow_minus_b()[i] * std::pow(std::abs(u0.values[i]), params.alpha));
  }
  config.dt0 = 0.02 / rate;
  config.dt_min = config.dt0 * 1e-6;
  config.horizon = 48.0 * config.dt0;
  config.out_interval = config.horizon / 8.0;

  CutoffProfile cutoff = make_cutoff(grid, config.cutoff_radius);
  const TimeSeries series = evolve_prepared(config, grid, cutoff, u0);
  CHECK(series.termination == Termination::horizon_reached);
  const double k0 = series.records.front().kinetic;
  for (const auto& rec : series.records) {
    CHECK(std::abs(rec.kinetic - k0) / k0 < 1e-4);
  }
}

TEST_CASE("evolve: negative-energy Gaussian is detected as blow-up") {
  SimConfig config = small_gaussian_config();
  config.data.amplitude = 6.0;  // amplitude * width must top ~11 for E < 0 here
  config.data.width = 2.0;
  config.horizon = 1.0;
  config.dt0 = 2e-5;
  config.dt_min = 1e-9;
  config.growth_factor = 50.0;
  config.kinetic_stop_factor = 60.0;

  GridPtr grid = RadialGrid::create(make_params(config.dim, config.b), config.r_max, config.n);
  const RadialField u0 = build_initial_data(grid, config.data);
  CHECK(report(u0).energy < 0.0);

  const TimeSeries series = evolve(config);
  CHECK(series.termination != Termination::horizon_reached);
  const BlowupVerdict verdict = detect_blowup(series, config.growth_factor);
  CHECK(verdict.verdict == BlowupVerdict::Verdict::blowup);
  CHECK(verdict.growth >= 50.0);
  REQUIRE(verdict.t_star_estimate.has_value());
  CHECK(*verdict.t_star_estimate > series.records.back().t);
}

TEST_CASE("detect_blowup: pole fit recovers a synthetic blow-up time within 1%") {
  const double t_star = 0.173;
  const double gamma = 1.4;
  std::vector<double> t, k;
  for (int i = 0; i <= 60; ++i) {
    const double ti = 0.9 * t_star * i / 60.0;
    t.push_back(ti);
    k.push_back(std::pow(t_star - ti, -gamma));
  }
  // feed only the last decade of growth, as the detector does
  const double k_max = k.back();
  std::vector<double> t_dec, k_dec;
  for (size_t i = 0; i < t.size(); ++i) {
    if (k[i] >= 0.1 * k_max) {
      t_dec.push_back(t[i]);
      k_dec.push_back(k[i]);
    }
  }
  const auto fitted = fit_blowup_time(t_dec, k_dec);
  REQUIRE(fitted.has_value());
  CHECK(*fitted == doctest::Approx(t_star).epsilon(1e-2));
}

TEST_CASE("detect_blowup: flat series yields no blow-up verdict") {
  TimeSeries series;
  series.termination = Termination::horizon_reached;
  for (int i = 0; i <= 10; ++i) {
    SeriesRecord rec;
    rec.t = 0.01 * i;
    rec.kinetic = 5.0 + 1e-9 * i;
    series.records.push_back(rec);
  }
  const BlowupVerdict verdict = detect_blowup(series, 50.0);
  CHECK(verdict.verdict == BlowupVerdict::Verdict::no_blowup_within_horizon);
  CHECK_FALSE(verdict.t_star_estimate.has_value());
}

TEST_CASE("virial consistency along a conservative flow") {
  // Wide data keeps the fast dispersive tail (which the finite-difference
  // slope of V_R cannot track across coarse snapshots) exponentially small.
  SimConfig config = small_gaussian_config();
  config.n = 512;
  config.r_max = 20.0;
  config.data.width = 1.5;
  config.horizon = 0.04;
  config.out_interval = 4e-4;
  config.dt0 = 4e-5;
  const TimeSeries series = evolve(config);
  REQUIRE(series.records.size() >= 20);
  for (size_t i = 1; i + 1 < series.records.size(); ++i) {
    const auto& lo = series.records[i - 1];
    const auto& mid = series.records[i];
    const auto& hi = series.records[i + 1];
    const double slope = (hi.v_r - lo.v_r) / (hi.t - lo.t);
    const double tol = 0.01 * std::max(std::abs(mid.rate_localized), 16.0 * mid.kinetic * 1e-3);
    CHECK(std::abs(slope - mid.rate_localized) <= tol);
  }
}
