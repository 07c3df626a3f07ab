#include <doctest.h>

#include <cmath>
#include <random>

#include "ibnls/errors.hpp"
#include "ibnls/experiments.hpp"
#include "ibnls/ground_state.hpp"

using namespace ibnls;

namespace {

// Independent truth-table oracle, written directly from the statements:
// radial: E < 0, or 0 <= E < E(W) with K > K_W  -> finite-time blow-up.
// non-radial, b < 16/N: E < 0                    -> finite or infinite time.
// non-radial, b >= 16/N: same window as radial   -> finite-time blow-up.
Regime oracle(const ClassificationFacts& f) {
  const bool window = (f.energy >= 0.0 && f.energy < f.energy_W && f.kinetic > f.kinetic_W) || f.energy < 0.0;
  if (f.radial) return window ? Regime::radial_blowup : Regime::outside_hypotheses;
  if (f.b >= f.b_threshold) return window ? Regime::nonradial_blowup : Regime::outside_hypotheses;
  return f.energy < 0.0 ? Regime::nonradial_dichotomy : Regime::outside_hypotheses;
}

}  // namespace

TEST_CASE("classify_facts: named regimes") {
  ClassificationFacts facts;
  facts.energy_W = 1.0;
  facts.kinetic_W = 10.0;
  facts.b = 1.0;
  facts.b_threshold = 16.0 / 6.0;

  facts.radial = true;
  facts.energy = -0.5;
  facts.kinetic = 1.0;
  CHECK(classify_facts(facts) == Regime::radial_blowup);

  facts.energy = 0.5;
  facts.kinetic = 11.0;
  CHECK(classify_facts(facts) == Regime::radial_blowup);

  facts.kinetic = 9.0;
  CHECK(classify_facts(facts) == Regime::outside_hypotheses);

  facts.radial = false;
  facts.energy = -0.5;
  CHECK(classify_facts(facts) == Regime::nonradial_dichotomy);

  facts.b = 3.0;  // above 16/6
  CHECK(classify_facts(facts) == Regime::nonradial_blowup);

  facts.energy = 0.5;
  facts.kinetic = 11.0;
  CHECK(classify_facts(facts) == Regime::nonradial_blowup);

  // N = 5: the admissible b interval misses 16/N entirely
  ClassificationFacts n5;
  n5.energy = -1.0;
  n5.energy_W = 1.0;
  n5.kinetic = 1.0;
  n5.kinetic_W = 1.0;
  n5.b = 2.0;
  n5.b_threshold = 3.2;
  n5.b_range_empty = true;
  n5.radial = false;
  CHECK(classify_facts(n5) == Regime::nonradial_dichotomy);
}

TEST_CASE("classify_facts agrees with the brute-force oracle on 10^4 records") {
  std::mt19937_64 rng(271828);
  std::uniform_real_distribution<double> energy_dist(-2.0, 2.0);
  std::uniform_real_distribution<double> kinetic_dist(0.0, 2.0);
  std::uniform_int_distribution<int> dim_dist(5, 12);
  std::uniform_int_distribution<int> coin(0, 1);

  int n5_empty_cases = 0;
  for (int k = 0; k < 10000; ++k) {
    const int dim = dim_dist(rng);
    const double upper = std::min(4.0, 0.5 * dim);
    ClassificationFacts facts;
    facts.energy_W = 1.0;
    facts.kinetic_W = 1.0;
    facts.energy = energy_dist(rng);
    facts.kinetic = kinetic_dist(rng);
    facts.b = upper * std::uniform_real_distribution<double>(0.01, 0.99)(rng);
    facts.b_threshold = 16.0 / dim;
    facts.b_range_empty = !(facts.b_threshold < upper);
    facts.radial = coin(rng) == 1;
    if (dim == 5) {
      CHECK(facts.b_range_empty);
      ++n5_empty_cases;
    }
    // boundary cases exactly at the thresholds
    if (k % 97 == 0) facts.energy = 0.0;
    if (k % 101 == 0) facts.kinetic = facts.kinetic_W;
    if (k % 103 == 0) facts.b = facts.b_threshold;
    CHECK(classify_facts(facts) == oracle(facts));
  }
  CHECK(n5_empty_cases > 500);
}

TEST_CASE("classify gathers facts from a field against a certified ground state") {
  GridPtr grid = RadialGrid::create(make_params(6, 1.0), 16.0, 256);
  GroundStateOptions opts;
  opts.seed_width = 1.5;
  const GroundStateResult gs = solve_ground_state(grid, opts);

  RadialField above = gs.W;
  above.values *= 1.05;
  const Classification cls = classify(above, gs, true);
  CHECK(cls.regime == Regime::radial_blowup);
  CHECK(cls.facts.energy > 0.0);
  CHECK(cls.facts.energy < cls.facts.energy_W);
  CHECK(cls.facts.kinetic > cls.facts.kinetic_W);

  RadialField below = gs.W;
  below.values *= 0.5;
  CHECK(classify(below, gs, true).regime == Regime::outside_hypotheses);

  // an uncertified ground state is rejected
  GroundStateResult fake = gs;
  fake.residual = 1.0;
  CHECK_THROWS_AS(classify(above, fake, true), ValidationError);
}

TEST_CASE("ode_blowup: closed form, trajectory crossing, and the lower bound") {
  const OdeBlowup ode = ode_blowup(1.0, 1.0, 0.0);
  CHECK(ode.t_star == doctest::Approx(1.0 / 3.0).epsilon(1e-15));

  // the numeric trajectory crosses 1e6 within 1% of t*
  CHECK(ode.trajectory.back().second > 1e6);
  CHECK(std::abs(ode.trajectory.back().first - ode.t_star) / ode.t_star < 1e-2);

  // A(t)^3 >= A1^3 / (1 - 3 C^4 A1^3 (t - t1)) at all samples
  for (const auto& [t, a] : ode.trajectory) {
    const double denom = 1.0 - 3.0 * t;
    if (denom <= 0.0) break;
    CHECK(a * a * a >= (1.0 / denom) * (1.0 - 1e-7));
  }

  CHECK_THROWS_AS(ode_blowup(1.0, 0.0, 0.0), DegenerateConstants);
  CHECK_THROWS_AS(ode_blowup(-1.0, 1.0, 0.0), DegenerateConstants);

  // nontrivial constants: t* = t1 + 1/(3 C^4 A1^3)
  const OdeBlowup general = ode_blowup(2.0, 0.7, 1.5);
  CHECK(general.t_star == doctest::Approx(1.5 + 1.0 / (3.0 * std::pow(0.7, 4) * 8.0)).epsilon(1e-14));
  CHECK(std::abs(general.trajectory.back().first - general.t_star) / (general.t_star - 1.5) < 1e-2);
}

TEST_CASE("sweep: empty input, determinism, and cartesian expansion") {
  CHECK(sweep({}, 4).empty());

  SimConfig base;
  base.dim = 6;
  base.b = 1.0;
  base.r_max = 12.0;
  base.n = 96;
  base.data.amplitude = 0.5;
  base.horizon = 0.005;
  base.cutoff_radius = 4.0;
  base.dt0 = 2e-4;
  base.gs.seed_width = 1.5;

  const std::vector<SimConfig> pair = {base, base};
  const std::vector<SweepRow> rows = sweep(pair, 2);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].index == 0);
  CHECK(rows[1].index == 1);
  CHECK(rows[0].error.empty());
  CHECK(rows[0].regime == rows[1].regime);
  CHECK(rows[0].termination == rows[1].termination);
  CHECK(rows[0].growth == rows[1].growth);  // bitwise determinism

  // a failing row never aborts the batch
  SimConfig bad = base;
  bad.r_max = -1.0;
  const std::vector<SweepRow> mixed = sweep({base, bad}, 2);
  REQUIRE(mixed.size() == 2);
  CHECK(mixed[0].error.empty());
  CHECK_FALSE(mixed[1].error.empty());
}
