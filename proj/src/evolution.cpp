#include "ibnls/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ibnls/errors.hpp"
#include "ibnls/virial.hpp"

namespace ibnls {

std::string to_string(Termination t) {
  switch (t) {
    case Termination::horizon_reached: return "horizon_reached";
    case Termination::blowup_detected: return "blowup_detected";
    case Termination::dt_floor: return "dt_floor";
  }
  return "unknown";
}

std::string to_string(BlowupVerdict::Verdict v) {
  return v == BlowupVerdict::Verdict::blowup ? "blowup" : "no_blowup_within_horizon";
}

void apply_nonlinear_phase(const RadialGrid& grid, Eigen::VectorXcd& u, double dt) {
  const double alpha = grid.params().alpha;
  for (int i = 0; i < grid.n(); ++i) {
    const double amp = std::abs(u[i]);
    if (amp == 0.0) continue;
    const double phase = -dt * grid.r_pow_minus_b()[i] * std::pow(amp, alpha);
    u[i] *= Complex(std::cos(phase), std::sin(phase));
  }
}

void apply_linear_propagator(const RadialGrid& grid, Eigen::VectorXcd& u, double dt) {
  Eigen::VectorXcd coeffs = grid.to_eigenbasis(u);
  const Eigen::VectorXd& lambda = grid.laplacian_eigenvalues();
  for (int k = 0; k < grid.n(); ++k) {
    const double phase = dt * lambda[k] * lambda[k];
    coeffs[k] *= Complex(std::cos(phase), std::sin(phase));
  }
  u = grid.from_eigenbasis(coeffs);
}

namespace {

void step_in_place(const RadialGrid& grid, Eigen::VectorXcd& u, double dt) {
  apply_nonlinear_phase(grid, u, 0.5 * dt);
  apply_linear_propagator(grid, u, dt);
  apply_nonlinear_phase(grid, u, 0.5 * dt);
  if (!u.allFinite()) throw NonFinite("state overflowed during a time step");
}

double kinetic_of(const RadialGrid& grid, const Eigen::VectorXcd& u) {
  return grid.norm_sq(grid.apply_laplacian(u));
}

// largest nonlinear phase rate |x|^{-b} |u|^alpha over the grid; steps are
// capped so one half-step never rotates the phase by more than ~0.05
double max_phase_rate(const RadialGrid& grid, const Eigen::VectorXcd& u) {
  const double alpha = grid.params().alpha;
  double rate = 0.0;
  for (int i = 0; i < grid.n(); ++i) {
    const double amp = std::abs(u[i]);
    if (amp > 0.0) rate = std::max(rate, grid.r_pow_minus_b()[i] * std::pow(amp, alpha));
  }
  return rate;
}

double boundary_ratio(const RadialGrid& grid, const Eigen::VectorXcd& u) {
  const int n = grid.n();
  const int tail = std::max(1, n / 20);
  double peak = 0.0, edge = 0.0;
  for (int i = 0; i < n; ++i) peak = std::max(peak, std::abs(u[i]));
  for (int i = n - tail; i < n; ++i) edge = std::max(edge, std::abs(u[i]));
  return peak > 0.0 ? edge / peak : 0.0;
}

}  // namespace

SimState step(const SimState& s, double dt) {
  if (dt == 0.0 || !std::isfinite(dt)) throw InvalidGridSpec("time step must be nonzero and finite");
  SimState next = s;
  step_in_place(*s.u.grid, next.u.values, dt);
  next.t += dt;
  next.dt = dt;
  next.step_count += 1;
  return next;
}

RadialField build_initial_data(const GridPtr& grid, const InitialDataSpec& spec, const GroundStateResult* gs) {
  const int n = grid->n();
  Eigen::VectorXcd values(n);
  switch (spec.family) {
    case InitialDataSpec::Family::gaussian: {
      if (!(spec.width > 0.0)) throw ConfigError("gaussian width must be positive");
      for (int i = 0; i < n; ++i) {
        const double r = grid->nodes()[i];
        values[i] = spec.amplitude * std::exp(-(r / spec.width) * (r / spec.width));
      }
      break;
    }
    case InitialDataSpec::Family::ground_state_multiple: {
      if (gs == nullptr) throw ConfigError("ground-state multiple data needs a solved ground state");
      require_grid(gs->W, *grid);
      values = spec.amplitude * gs->W.values;
      break;
    }
  }
  if (spec.chirp != 0.0) {
    for (int i = 0; i < n; ++i) {
      const double r = grid->nodes()[i];
      const double phase = spec.chirp * r * r;
      values[i] *= Complex(std::cos(phase), std::sin(phase));
    }
  }
  return grid->make_field(values);
}

TimeSeries evolve(const SimConfig& config) {
  const ModelParams params = make_params(config.dim, config.b);
  GridPtr grid = RadialGrid::create(params, config.r_max, config.n);
  CutoffProfile cutoff = make_cutoff(grid, config.cutoff_radius);

  RadialField u0 = [&] {
    if (config.data.family == InitialDataSpec::Family::ground_state_multiple) {
      GroundStateResult gs = solve_ground_state(grid, config.gs);
      return build_initial_data(grid, config.data, &gs);
    }
    return build_initial_data(grid, config.data);
  }();

  return evolve_prepared(config, grid, cutoff, u0);
}

TimeSeries evolve_prepared(const SimConfig& config, const GridPtr& grid, const CutoffProfile& cutoff,
                           const RadialField& u0) {
  if (!(config.horizon > 0.0)) throw ConfigError("horizon must be positive");
  if (!(config.dt0 > 0.0) || !(config.dt_min > 0.0)) throw ConfigError("time steps must be positive");

  const double out_interval = config.out_interval > 0.0 ? config.out_interval : config.horizon / 64.0;

  TimeSeries series;
  Eigen::VectorXcd u = u0.values;
  double t = 0.0;
  long steps = 0;

  const double kinetic0 = kinetic_of(*grid, u);
  if (!(kinetic0 > 0.0)) throw DegenerateField("initial data has vanishing kinetic functional");

  double mass0 = 0.0, energy0 = 0.0;
  auto record = [&](double dt_now) {
    RadialField f = grid->make_field(u);
    const FunctionalReport rep = report(f);
    const VirialReport vir = rate_localized(f, cutoff);
    SeriesRecord rec;
    rec.t = t;
    rec.mass = rep.mass;
    rec.energy = rep.energy;
    rec.kinetic = rep.kinetic;
    rec.grad_sq = rep.grad_sq;
    rec.potential = rep.potential;
    rec.v_r = vir.v;
    rec.rate_localized = vir.rate_localized;
    rec.dt = dt_now;
    rec.virial_terms = vir.terms;
    rec.tail_error = vir.tail_error;
    series.records.push_back(rec);
    if (series.records.size() == 1) {
      mass0 = rep.mass;
      energy0 = rep.energy;
    } else {
      if (mass0 != 0.0) series.mass_drift = std::max(series.mass_drift, std::abs(rep.mass - mass0) / std::abs(mass0));
      if (energy0 != 0.0)
        series.energy_drift = std::max(series.energy_drift, std::abs(rep.energy - energy0) / std::abs(energy0));
    }
    series.max_boundary_ratio = std::max(series.max_boundary_ratio, boundary_ratio(*grid, u));
  };

  record(config.dt0);
  double next_record = out_interval;
  double kinetic_at_record = kinetic0;
  series.termination = Termination::horizon_reached;

  while (t < config.horizon) {
    const double kin = kinetic_of(*grid, u);
    if (kin >= config.kinetic_stop_factor * kinetic0) {
      series.termination = Termination::blowup_detected;
      break;
    }
    const double adaptive_dt = config.dt0 * std::min(1.0, kinetic0 / kin);
    if (adaptive_dt < config.dt_min) {
      series.termination = Termination::dt_floor;
      break;
    }
    // stability guard on top of the adaptive law; the floor check above
    // stays on the adaptive value so the dt_floor semantics are unchanged
    const double rate = max_phase_rate(*grid, u);
    double dt = adaptive_dt;
    if (rate > 0.0) dt = std::min(dt, 0.1 / rate);
    dt = std::min(dt, config.horizon - t);
    // land exactly on the record time so diagnostics are evenly spaced
    if (t + dt >= next_record - 1e-14) dt = std::max(next_record - t, config.dt_min);

    try {
      step_in_place(*grid, u, dt);
    } catch (const NonFinite&) {
      series.termination = Termination::blowup_detected;
      break;
    }
    t += dt;
    ++steps;

    // time-based cadence plus log-spaced snapshots through kinetic growth,
    // so a blow-up's final decades stay resolved in the series
    const double kin_now = kinetic_of(*grid, u);
    if (t >= next_record - 1e-12) {
      record(adaptive_dt);
      kinetic_at_record = kin_now;
      while (next_record <= t + 1e-12) next_record += out_interval;
    } else if (kin_now >= 1.25 * kinetic_at_record) {
      record(adaptive_dt);
      kinetic_at_record = kin_now;
    }
  }

  // terminal snapshot unless it coincides with the last record
  if (u.allFinite() && (series.records.empty() || series.records.back().t < t - 1e-15)) {
    record(series.records.empty() ? config.dt0 : series.records.back().dt);
  }
  series.total_steps = steps;
  return series;
}

std::optional<double> fit_blowup_time(const std::vector<double>& t, const std::vector<double>& kinetic) {
  const size_t m = t.size();
  if (m < 4 || kinetic.size() != m) return std::nullopt;
  const double t_end = t.back();
  const double span = t_end - t.front();
  if (!(span > 0.0)) return std::nullopt;

  auto sse_for = [&](double t_star) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < m; ++i) {
      const double x = std::log(t_star - t[i]);
      const double y = std::log(kinetic[i]);
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    const double denom = m * sxx - sx * sx;
    if (std::abs(denom) < 1e-30) return std::numeric_limits<double>::infinity();
    const double slope = (m * sxy - sx * sy) / denom;
    const double icept = (sy - slope * sx) / m;
    double sse = 0;
    for (size_t i = 0; i < m; ++i) {
      const double x = std::log(t_star - t[i]);
      const double r = std::log(kinetic[i]) - (icept + slope * x);
      sse += r * r;
    }
    return sse;
  };

  // log-spaced scan of the pole offset followed by golden-section refinement
  double best_offset = span;
  double best_sse = std::numeric_limits<double>::infinity();
  for (int k = 0; k <= 240; ++k) {
    const double offset = span * std::pow(10.0, -8.0 + 9.0 * k / 240.0);
    const double sse = sse_for(t_end + offset);
    if (sse < best_sse) {
      best_sse = sse;
      best_offset = offset;
    }
  }
  double lo = best_offset / 2.0, hi = best_offset * 2.0;
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
  double f1 = sse_for(t_end + x1), f2 = sse_for(t_end + x2);
  for (int it = 0; it < 80; ++it) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - gr * (hi - lo);
      f1 = sse_for(t_end + x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + gr * (hi - lo);
      f2 = sse_for(t_end + x2);
    }
  }
  if (!std::isfinite(best_sse)) return std::nullopt;
  return t_end + 0.5 * (lo + hi);
}

BlowupVerdict detect_blowup(const TimeSeries& series, double growth_factor) {
  BlowupVerdict verdict;
  if (series.records.empty()) return verdict;
  const double k0 = series.records.front().kinetic;
  double k_max = 0.0;
  for (const auto& rec : series.records) k_max = std::max(k_max, rec.kinetic);
  verdict.growth = k0 > 0.0 ? k_max / k0 : 0.0;

  const bool grew = verdict.growth >= growth_factor;
  const bool hard_stop = series.termination != Termination::horizon_reached;
  if (!(grew && hard_stop)) return verdict;

  verdict.verdict = BlowupVerdict::Verdict::blowup;

  // fit on the last decade of kinetic growth
  std::vector<double> t, k;
  for (const auto& rec : series.records) {
    if (rec.kinetic >= 0.1 * k_max) {
      t.push_back(rec.t);
      k.push_back(rec.kinetic);
    }
  }
  verdict.t_star_estimate = fit_blowup_time(t, k);
  return verdict;
}

}  // namespace ibnls
