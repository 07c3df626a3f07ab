#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "ibnls/cutoff.hpp"
#include "ibnls/ground_state.hpp"
#include "ibnls/radial_grid.hpp"

namespace ibnls {

struct InitialDataSpec {
  enum class Family { gaussian, ground_state_multiple };
  Family family = Family::gaussian;
  double amplitude = 1.0;
  double width = 1.0;  // gaussian family only
  double chirp = 0.0;  // phase factor e^{i chirp r^2}
};

struct SimConfig {
  int dim = 6;
  double b = 1.0;
  double r_max = 24.0;
  int n = 512;
  InitialDataSpec data;
  double horizon = 0.1;         // T
  double cutoff_radius = 8.0;   // R of the virial diagnostics
  double dt0 = 1e-4;
  double dt_min = 1e-10;
  double growth_factor = 50.0;        // kinetic growth declaring blow-up in detection
  double kinetic_stop_factor = 1e6;   // driver stops once kinetic exceeds this multiple of its initial value
  double out_interval = 0.0;          // diagnostics cadence; 0 picks horizon/64
  double far_field_tol = 1e-4;        // boundary-amplitude monitor threshold
  bool declared_radial = true;        // hypothesis flag fed to the decision logic
  GroundStateOptions gs;              // used by the ground_state_multiple family
};

struct SimState {
  double t = 0.0;
  RadialField u;
  double dt = 0.0;
  long step_count = 0;
};

struct SeriesRecord {
  double t = 0.0;
  double mass = 0.0;
  double energy = 0.0;
  double kinetic = 0.0;
  double grad_sq = 0.0;
  double potential = 0.0;
  double v_r = 0.0;
  double rate_localized = 0.0;
  double dt = 0.0;
  std::array<double, 6> virial_terms{};  // term-by-term breakdown of the rate
  double tail_error = 0.0;
};

enum class Termination { horizon_reached, blowup_detected, dt_floor };

std::string to_string(Termination t);

struct TimeSeries {
  std::vector<SeriesRecord> records;
  Termination termination = Termination::horizon_reached;
  double mass_drift = 0.0;    // max relative deviation from the initial mass
  double energy_drift = 0.0;  // same for the energy
  double max_boundary_ratio = 0.0;  // far-field amplitude monitor, max over records
  long total_steps = 0;
};

// The two exact substeps of the splitting, exposed on their own: the pure
// phase rotation u <- u exp(-i dt |x|^{-b} |u|^alpha) and the unitary
// propagator exp(i dt Lambda) in the bilaplacian eigenbasis.
void apply_nonlinear_phase(const RadialGrid& grid, Eigen::VectorXcd& u, double dt);
void apply_linear_propagator(const RadialGrid& grid, Eigen::VectorXcd& u, double dt);

// One Strang step: exact nonlinear half phase, exact linear propagator,
// second nonlinear half phase. Negative dt runs the splitting backwards.
// Throws NonFinite when the state overflows (the driver treats that as
// blow-up).
SimState step(const SimState& s, double dt);

RadialField build_initial_data(const GridPtr& grid, const InitialDataSpec& spec,
                               const GroundStateResult* gs = nullptr);

// Integrates with the adaptive law dt = dt0 min(1, kinetic(0)/kinetic(t)),
// recording diagnostics every out_interval. Stops at the horizon, on
// non-finite values, on kinetic exceeding kinetic_stop_factor times its
// initial value, or when dt falls below dt_min.
TimeSeries evolve(const SimConfig& config);

// Same, on a prebuilt grid/cutoff/initial state (the config's grid fields are
// ignored).
TimeSeries evolve_prepared(const SimConfig& config, const GridPtr& grid, const CutoffProfile& cutoff,
                           const RadialField& u0);

struct BlowupVerdict {
  enum class Verdict { blowup, no_blowup_within_horizon };
  Verdict verdict = Verdict::no_blowup_within_horizon;
  std::optional<double> t_star_estimate;
  double growth = 0.0;  // final kinetic over initial kinetic
};

std::string to_string(BlowupVerdict::Verdict v);

// Declares blow-up when kinetic grew by at least growth_factor and the run
// terminated on the dt floor or on non-finite values; fits
// kinetic ~ (T*-t)^{-gamma} over the last decade of growth for t*.
BlowupVerdict detect_blowup(const TimeSeries& series, double growth_factor);

// Least-squares fit helper exposed for testing: returns the T* minimizing the
// residual of log k = c - gamma log(T*-t) or nullopt when the data cannot
// support a fit.
std::optional<double> fit_blowup_time(const std::vector<double>& t, const std::vector<double>& kinetic);

}  // namespace ibnls
