#include "ibnls/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <memory>
#include <semaphore>
#include <string>

#include "ibnls/errors.hpp"
#include "ibnls/random_fields.hpp"
#include "ibnls/virial.hpp"

namespace ibnls {

std::string to_string(Regime regime) {
  switch (regime) {
    case Regime::radial_blowup: return "radial_blowup";
    case Regime::nonradial_dichotomy: return "nonradial_dichotomy";
    case Regime::nonradial_blowup: return "nonradial_blowup";
    case Regime::outside_hypotheses: return "outside_hypotheses";
  }
  return "unknown";
}

Regime classify_facts(const ClassificationFacts& facts) {
  const bool negative_energy = facts.energy < 0.0;
  const bool window = facts.energy >= 0.0 && facts.energy < facts.energy_W && facts.kinetic > facts.kinetic_W;

  if (facts.radial) {
    return (negative_energy || window) ? Regime::radial_blowup : Regime::outside_hypotheses;
  }
  if (facts.b < facts.b_threshold) {
    return negative_energy ? Regime::nonradial_dichotomy : Regime::outside_hypotheses;
  }
  // b >= 16/N (only reachable when the admissible interval meets the threshold)
  return (negative_energy || window) ? Regime::nonradial_blowup : Regime::outside_hypotheses;
}

Classification classify(const RadialField& f, const GroundStateResult& gs, bool radial) {
  if (!(gs.residual <= 1e-6)) {
    throw ValidationError("ground state is not certified: fixed-point residual " + std::to_string(gs.residual));
  }
  if (!(std::abs(gs.potential_W / gs.kinetic_W - 1.0) <= 1e-3)) {
    throw ValidationError("ground state is not certified: kinetic/potential identity fails");
  }
  const ModelParams& mp = f.grid->params();
  const FunctionalReport rep = report(f);

  Classification result;
  result.facts.energy = rep.energy;
  result.facts.energy_W = gs.energy_W;
  result.facts.kinetic = rep.kinetic;
  result.facts.kinetic_W = gs.kinetic_W;
  result.facts.b = mp.b;
  const BThresholdInfo info = threshold_16_over_n(mp);
  result.facts.b_threshold = info.threshold;
  result.facts.b_range_empty = !info.reachable;
  result.facts.radial = radial;
  result.regime = classify_facts(result.facts);
  return result;
}

OdeBlowup ode_blowup(double A1, double C, double t1) {
  if (!(C > 0.0)) throw DegenerateConstants("the comparison ODE needs C > 0");
  if (!(A1 > 0.0)) throw DegenerateConstants("the comparison ODE needs A(t1) > 0");

  OdeBlowup out;
  const double c4 = C * C * C * C;
  out.t_star = t1 + 1.0 / (3.0 * c4 * A1 * A1 * A1);

  auto rhs = [c4](double a) { return c4 * a * a * a * a; };
  double t = t1;
  double a = A1;
  out.trajectory.emplace_back(t, a);
  constexpr double kCap = 1e6;
  constexpr double kSafety = 2e-3;
  while (a <= kCap) {
    const double dt = kSafety / (c4 * a * a * a);
    const double k1 = rhs(a);
    const double k2 = rhs(a + 0.5 * dt * k1);
    const double k3 = rhs(a + 0.5 * dt * k2);
    const double k4 = rhs(a + dt * k3);
    a += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    t += dt;
    out.trajectory.emplace_back(t, a);
    if (out.trajectory.size() > 2000000) {
      throw NumericalError("comparison ODE integration stalled");
    }
  }
  return out;
}

namespace {

SweepRow run_sweep_row(std::size_t index, const SimConfig& config) {
  SweepRow row;
  row.index = index;
  row.config = config;
  try {
    const ModelParams params = make_params(config.dim, config.b);
    GridPtr grid = RadialGrid::create(params, config.r_max, config.n);
    CutoffProfile cutoff = make_cutoff(grid, config.cutoff_radius);
    GroundStateResult gs = solve_ground_state(grid, config.gs);
    RadialField u0 = build_initial_data(grid, config.data, &gs);

    Classification cls = classify(u0, gs, config.declared_radial);
    row.regime = to_string(cls.regime);

    TimeSeries series = evolve_prepared(config, grid, cutoff, u0);
    row.termination = to_string(series.termination);
    BlowupVerdict verdict = detect_blowup(series, config.growth_factor);
    row.verdict = to_string(verdict.verdict);
    row.t_star_estimate = verdict.t_star_estimate;
    row.growth = verdict.growth;

    const bool predicted_finite_time =
        cls.regime == Regime::radial_blowup || cls.regime == Regime::nonradial_blowup;
    if (predicted_finite_time && series.termination == Termination::horizon_reached) {
      row.note = "horizon too short";
    } else if (cls.regime == Regime::nonradial_dichotomy && series.termination == Termination::horizon_reached) {
      row.note = "dichotomy undecidable within horizon";
    }
  } catch (const std::exception& e) {
    row.error = e.what();
  }
  return row;
}

}  // namespace

std::vector<SweepRow> sweep(const std::vector<SimConfig>& configs, int parallelism) {
  const int workers = std::max(1, parallelism);
  std::counting_semaphore<> slots(workers);
  std::vector<std::future<SweepRow>> futures;
  futures.reserve(configs.size());
  for (std::size_t i = 0; i < configs.size(); ++i) {
    slots.acquire();
    futures.push_back(std::async(std::launch::async, [&, i] {
      SweepRow row = run_sweep_row(i, configs[i]);
      slots.release();
      return row;
    }));
  }
  std::vector<SweepRow> rows;
  rows.reserve(configs.size());
  for (auto& fut : futures) rows.push_back(fut.get());  // submission order
  return rows;
}

namespace {

void push_check(std::vector<CheckResult>& checks, std::string name, double measured, double threshold,
                bool pass_is_below, std::string detail = "") {
  CheckResult check;
  check.name = std::move(name);
  check.measured = measured;
  check.threshold = threshold;
  check.pass = pass_is_below ? measured <= threshold : measured >= threshold;
  check.detail = std::move(detail);
  checks.push_back(check);
}

}  // namespace

std::vector<CheckResult> run_verification(std::uint64_t seed) {
  std::vector<CheckResult> checks;

  // --- cutoff identities on a working grid -------------------------------
  {
    const ModelParams params = make_params(6, 1.0);
    GridPtr grid = RadialGrid::create(params, 24.0, 384);
    const double R = 8.0;
    CutoffProfile c = make_cutoff(grid, R);

    double max_phi_dev = 0.0, max_d1_dev = 0.0, max_d2_dev = 0.0;
    double min_monotone = 0.0, max_d1_excess = 0.0, max_d2_excess = 0.0;
    double max_support12 = 0.0, max_support36 = 0.0;
    for (int i = 0; i < grid->n(); ++i) {
      const double r = grid->nodes()[i];
      if (r <= R) {
        max_phi_dev = std::max(max_phi_dev, std::abs(c.big_phi[i] - 16.0));
        max_d1_dev = std::max(max_d1_dev, std::abs(c.radial_derivs[0][i] - 2.0 * r));
        max_d2_dev = std::max(max_d2_dev, std::abs(c.radial_derivs[1][i] - 2.0));
      }
      min_monotone = std::min(min_monotone, c.radial_derivs[0][i] - r * c.radial_derivs[1][i]);
      max_d1_excess = std::max(max_d1_excess, c.radial_derivs[0][i] - 2.0 * r);
      max_d2_excess = std::max(max_d2_excess, c.radial_derivs[1][i] - 2.0);
      if (r >= 2.0 * R) {
        for (int j = 0; j < 2; ++j) max_support12 = std::max(max_support12, std::abs(c.radial_derivs[j][i]));
      }
      if (r <= R || r >= 2.0 * R) {
        for (int j = 2; j < 6; ++j) max_support36 = std::max(max_support36, std::abs(c.radial_derivs[j][i]));
      }
    }
    push_check(checks, "cutoff.ball_identity_phi16", max_phi_dev, 1e-12, true);
    push_check(checks, "cutoff.quadratic_inside", std::max(max_d1_dev, max_d2_dev), 1e-12, true);
    push_check(checks, "cutoff.monotone_combination", -min_monotone, 1e-12, true);
    push_check(checks, "cutoff.derivative_caps", std::max(max_d1_excess, max_d2_excess), 1e-12, true);
    push_check(checks, "cutoff.support_orders_1_2", max_support12, 0.0, true);
    push_check(checks, "cutoff.support_orders_3_6", max_support36, 0.0, true);

    double max_spread = 0.0;
    for (int j = 1; j <= 6; ++j) {
      const std::vector<double> cert = scaling_certificate({5.0, 10.0, 20.0}, j);
      const double lo = *std::min_element(cert.begin(), cert.end());
      const double hi = *std::max_element(cert.begin(), cert.end());
      if (lo > 0.0) max_spread = std::max(max_spread, hi / lo - 1.0);
    }
    push_check(checks, "cutoff.scaling_certificate_spread", max_spread, 5e-2, true);
  }

  // --- virial algebra and localization ------------------------------------
  {
    const ModelParams params = make_params(6, 1.0);
    GridPtr grid = RadialGrid::create(params, 16.0, 512);
    SmoothFieldSampler sampler(grid, seed);

    double max_form_dev = 0.0;
    for (int k = 0; k < 100; ++k) {
      RadialField f = sampler.complex_field();
      const auto [direct, energy_form] = rate_exact_forms(report(f), params);
      const double scale = std::max({std::abs(direct), std::abs(energy_form), 1e-30});
      max_form_dev = std::max(max_form_dev, std::abs(direct - energy_form) / scale);
    }
    push_check(checks, "virial.rate_exact_two_forms", max_form_dev, 1e-10, true);
  }
  {
    // field supported well inside the cutoff ball, on a grid fine enough for
    // the two discretizations of the Hessian terms to agree to 1e-3
    const ModelParams params = make_params(6, 1.0);
    GridPtr grid = RadialGrid::create(params, 12.0, 1024);
    CutoffProfile c = make_cutoff(grid, 5.0);
    Eigen::VectorXcd vals(grid->n());
    for (int i = 0; i < grid->n(); ++i) {
      const double r = grid->nodes()[i];
      vals[i] = 1.3 * std::exp(-(r / 0.8) * (r / 0.8));
    }
    RadialField f = grid->make_field(vals);
    const VirialReport rep = rate_localized(f, c);
    const double rel = std::abs(rep.rate_localized - rep.rate_exact) / std::abs(rep.rate_exact);
    push_check(checks, "virial.localization_limit", rel, 1e-3, true);
  }

  // --- quadrature closed form ---------------------------------------------
  {
    const ModelParams params = make_params(5, 1.0);
    GridPtr grid = RadialGrid::create(params, 8.0, 1600);
    Eigen::VectorXd samples(grid->n());
    for (int i = 0; i < grid->n(); ++i) {
      const double r = grid->nodes()[i];
      samples[i] = std::exp(-2.0 * r * r);
    }
    const double exact = std::pow(M_PI / 2.0, 2.5);
    const double rel = std::abs(grid->integrate(samples) - exact) / exact;
    push_check(checks, "quadrature.gaussian_mass", rel, 1e-4, true);
  }

  // --- ground-state identities --------------------------------------------
  {
    const ModelParams params = make_params(6, 1.0);
    GridPtr grid = RadialGrid::create(params, 16.0, 256);
    GroundStateOptions opts;
    opts.seed_width = 1.5;
    GroundStateResult gs = solve_ground_state(grid, opts);
    push_check(checks, "ground_state.residual", gs.residual, 1e-8, true);
    push_check(checks, "ground_state.pohozaev_kinetic_potential",
               std::abs(gs.potential_W / gs.kinetic_W - 1.0), 1e-4, true);
    const double energy_target = (4.0 - params.b) / (2.0 * (params.dim - params.b)) * gs.kinetic_W;
    push_check(checks, "ground_state.pohozaev_energy", std::abs(gs.energy_W - energy_target) / gs.kinetic_W,
               1e-4, true);
    const double k_opt_target = std::pow(gs.kinetic_W, -(4.0 - params.b) / (params.dim - 4));
    push_check(checks, "ground_state.optimal_constant", std::abs(gs.k_opt / k_opt_target - 1.0), 1e-4, true);

    // sharp-constant ensembles against the certified constant
    SmoothFieldSampler sampler(grid, seed + 1);
    double max_sobolev = 0.0, min_weinstein = std::numeric_limits<double>::infinity();
    double max_interp = 0.0;
    const double j_w = weinstein(gs.W);
    for (int k = 0; k < 100; ++k) {
      RadialField f = sampler.real_field();
      const FunctionalReport rep = report(f);
      if (rep.kinetic > 0.0 && rep.potential > 0.0) {
        max_sobolev = std::max(max_sobolev, rep.potential / (gs.k_opt * std::pow(rep.kinetic, 0.5 * params.p)));
        min_weinstein = std::min(min_weinstein, weinstein(f) / j_w);
      }
      InequalityReport ineq = inequality_report(f, 4.0, gs.k_opt);
      if (ineq.interp_ratio) max_interp = std::max(max_interp, *ineq.interp_ratio);
    }
    push_check(checks, "sharp_constant.sobolev_ratio", max_sobolev, 1.0 + 1e-3, true);
    push_check(checks, "sharp_constant.weinstein_optimality", min_weinstein, 1.0 - 1e-3, false);
    push_check(checks, "inequalities.interp_ratio", max_interp, 1.0, true);
  }

  // --- Strauss ratio stability across exterior radii -----------------------
  {
    const ModelParams params = make_params(6, 1.0);
    GridPtr grid = RadialGrid::create(params, 24.0, 512);
    // Gaussian families scaled with R: the quotient is scale-invariant, so
    // its constant must be stable across R
    double worst_spread = 0.0;
    for (double shape : {2.0, 3.0}) {
      double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
      for (double R : {2.0, 4.0, 8.0}) {
        Eigen::VectorXcd vals(grid->n());
        const double width = R / shape;
        for (int i = 0; i < grid->n(); ++i) {
          const double r = grid->nodes()[i];
          vals[i] = std::exp(-(r / width) * (r / width));
        }
        InequalityReport ineq = inequality_report(grid->make_field(vals), R);
        if (ineq.strauss_ratio && *ineq.strauss_ratio > 0.0) {
          lo = std::min(lo, *ineq.strauss_ratio);
          hi = std::max(hi, *ineq.strauss_ratio);
        }
      }
      worst_spread = std::max(worst_spread, hi / lo);
    }
    push_check(checks, "inequalities.strauss_stability", worst_spread, 2.0, true,
               "max/min Strauss ratio over R-scaled Gaussian families, R in {2,4,8}");
  }

  // --- comparison ODE -------------------------------------------------------
  {
    OdeBlowup ode = ode_blowup(1.0, 1.0, 0.0);
    const double t_star_err = std::abs(ode.t_star - 1.0 / 3.0);
    push_check(checks, "ode.closed_form_t_star", t_star_err, 1e-15, true);
    const double crossing = ode.trajectory.back().first;
    push_check(checks, "ode.trajectory_crossing", std::abs(crossing - ode.t_star) / ode.t_star, 1e-2, true);
    double worst = 0.0;
    for (const auto& [t, a] : ode.trajectory) {
      const double denom = 1.0 - 3.0 * (t - 0.0);
      if (denom <= 0.0) break;
      const double bound = 1.0 / denom;  // A1 = C = 1
      worst = std::min(worst, a * a * a / bound - 1.0);
    }
    push_check(checks, "ode.lower_bound_inequality", -worst, 1e-7, true);
  }

  return checks;
}

}  // namespace ibnls
