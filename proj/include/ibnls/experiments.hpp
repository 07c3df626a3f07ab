#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ibnls/evolution.hpp"
#include "ibnls/ground_state.hpp"
#include "ibnls/radial_grid.hpp"

namespace ibnls {

// Outcome of the hypothesis table: which statement (if any) covers the data.
enum class Regime {
  radial_blowup,        // radial data, E < 0 or above-ground-state window: finite time
  nonradial_dichotomy,  // non-radial, b below 16/N, E < 0: finite or infinite time
  nonradial_blowup,     // non-radial, b at least 16/N: finite time
  outside_hypotheses,
};

std::string to_string(Regime regime);

// The comparisons the decision is a pure function of.
struct ClassificationFacts {
  double energy = 0.0;     // E(u0)
  double energy_W = 0.0;   // E of the ground state
  double kinetic = 0.0;    // ||Delta u0||^2
  double kinetic_W = 0.0;  // ||Delta W||^2
  double b = 0.0;
  double b_threshold = 0.0;    // 16/N
  bool b_range_empty = false;  // [16/N, min(4, N/2)) empty, e.g. N = 5
  bool radial = true;
};

struct Classification {
  Regime regime = Regime::outside_hypotheses;
  ClassificationFacts facts;
};

// Pure decision core; the truth-table oracle in the tests runs against this.
Regime classify_facts(const ClassificationFacts& facts);

// Gathers facts from the field and a certified ground state. Throws
// ValidationError when the ground state's fixed-point or identity residuals
// are out of tolerance.
Classification classify(const RadialField& f, const GroundStateResult& gs, bool radial);

struct OdeBlowup {
  double t_star = 0.0;  // t1 + 1/(3 C^4 A1^3)
  std::vector<std::pair<double, double>> trajectory;  // (t, A) samples until A > 1e6
};

// The comparison ODE A' = C^4 A^4 from (A1 at t1): closed-form blow-up time
// plus an integrated trajectory. Throws DegenerateConstants for C <= 0 or
// A1 <= 0.
OdeBlowup ode_blowup(double A1, double C, double t1);

struct SweepRow {
  std::size_t index = 0;
  SimConfig config;
  std::string regime;
  std::string termination;
  std::string verdict;
  std::optional<double> t_star_estimate;
  double growth = 0.0;
  std::string note;   // "horizon too short" when a predicted blow-up ran out of time
  std::string error;  // failure captured per row, never aborting the sweep
};

// Runs evolve per config, at most `parallelism` concurrently; rows come back
// in submission order regardless of completion order.
std::vector<SweepRow> sweep(const std::vector<SimConfig>& configs, int parallelism);

struct CheckResult {
  std::string name;
  bool pass = false;
  double measured = 0.0;
  double threshold = 0.0;
  std::string detail;
};

// The identity/inequality verification suite behind the `verify` subcommand:
// cutoff certificates, virial algebra, quadrature closed forms, ground-state
// identities, and the sharp-constant ensembles.
std::vector<CheckResult> run_verification(std::uint64_t seed);

}  // namespace ibnls
