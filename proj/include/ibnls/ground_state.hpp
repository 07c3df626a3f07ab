#pragma once

#include "ibnls/functionals.hpp"
#include "ibnls/radial_grid.hpp"

namespace ibnls {

struct GroundStateOptions {
  double tol = 1e-8;        // relative fixed-point residual target
  int max_iter = 3000;
  double seed_width = 1.0;  // width of the Gaussian seed
};

// Converged positive decreasing profile of Delta^2 W = |x|^{-b} |W|^alpha W
// with its certified scale-invariant constants.
struct GroundStateResult {
  RadialField W;
  double kinetic_W = 0.0;    // ||Delta W||^2
  double potential_W = 0.0;  // int |x|^{-b} |W|^p
  double energy_W = 0.0;
  double k_opt = 0.0;        // attained sharp constant potential / kinetic^{p/2}
  double residual = 0.0;     // ||Delta^2 W - |x|^{-b} W^q|| / ||Delta^2 W||
  double gamma_final = 0.0;  // last Petviashvili stabilizer value
  int iterations = 0;
  int restarts = 0;
};

// Petviashvili iteration W <- gamma^theta (Delta^2)^{-1}[|x|^{-b} |W|^alpha W]
// with gamma = <Delta^2 W, W> / <|x|^{-b}|W|^alpha W, W> and theta = q/(q-1).
// Seeded with a Gaussian of opts.seed_width; restarts with halved width (up
// to three times) before giving up with NoConvergence. The singular factor is
// the cell-averaged |x|^{-b} of the grid, which makes the converged profile
// satisfy the quadrature identity kinetic = potential by construction.
GroundStateResult solve_ground_state(const GridPtr& grid, const GroundStateOptions& opts = {});

// J(f) = ||Delta f||^p / int |x|^{-b} |f|^p; scale and amplitude invariant,
// minimized by the ground state at 1/k_opt.
double weinstein(const RadialField& f);

// delta = 1 - E(f) 2(N-b) / ((4-b) ||Delta f||^2), positive whenever
// 0 < E(f) < E(W) and ||Delta f|| > ||Delta W||. Boundary cases (f equal to
// the ground state itself) pass the hypothesis check within a relative 1e-9
// and return delta ~ 0; genuine violations throw HypothesesNotMet carrying
// which hypothesis failed.
double coercivity_gap(const RadialField& f, const GroundStateResult& gs);

}  // namespace ibnls
