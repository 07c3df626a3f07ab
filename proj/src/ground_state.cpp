#include "ibnls/ground_state.hpp"

#include <cmath>
#include <string>

#include "ibnls/errors.hpp"

namespace ibnls {

namespace {

struct IterationOutcome {
  bool converged = false;
  Eigen::VectorXd profile;
  double residual = 0.0;
  double gamma = 0.0;
  int iterations = 0;
};

IterationOutcome petviashvili(const RadialGrid& grid, double seed_width, double tol, int max_iter) {
  const ModelParams& mp = grid.params();
  const int n = grid.n();
  const double theta = mp.q / (mp.q - 1.0);

  Eigen::VectorXd W(n);
  for (int i = 0; i < n; ++i) {
    const double r = grid.nodes()[i];
    W[i] = std::exp(-(r / seed_width) * (r / seed_width));
  }

  IterationOutcome out;
  for (int iter = 1; iter <= max_iter; ++iter) {
    // nonlinear image |x|^{-b} |W|^alpha W with the cell-averaged weight
    Eigen::VectorXd nonlin(n);
    for (int i = 0; i < n; ++i) {
      nonlin[i] = grid.r_pow_minus_b()[i] * std::pow(std::abs(W[i]), mp.alpha) * W[i];
    }

    Eigen::VectorXd lap = grid.apply_laplacian(W);
    const double num = grid.inner(lap, lap);  // <Delta^2 W, W> by self-adjointness
    const double den = grid.inner(nonlin, W);
    if (!(den > 0.0) || !std::isfinite(num) || !std::isfinite(den)) {
      return out;  // degenerate iterate; caller restarts
    }
    const double gamma = num / den;

    Eigen::VectorXd next = std::pow(gamma, theta) * grid.solve_bilaplacian(nonlin);
    if (!next.allFinite()) return out;

    // relative fixed-point residual of the new iterate
    Eigen::VectorXd bilap = grid.apply_bilaplacian(next);
    Eigen::VectorXd image(n);
    for (int i = 0; i < n; ++i) {
      image[i] = grid.r_pow_minus_b()[i] * std::pow(std::abs(next[i]), mp.alpha) * next[i];
    }
    const double res_norm = std::sqrt(grid.inner(bilap - image, bilap - image));
    const double ref_norm = std::sqrt(grid.inner(bilap, bilap));
    const double residual = res_norm / ref_norm;

    W = next;
    out.gamma = gamma;
    out.residual = residual;
    out.iterations = iter;
    if (residual < tol) {
      out.converged = true;
      out.profile = W;
      return out;
    }
  }
  out.profile = W;
  return out;
}

}  // namespace

GroundStateResult solve_ground_state(const GridPtr& grid, const GroundStateOptions& opts) {
  double width = opts.seed_width;
  IterationOutcome outcome;
  int restarts = 0;
  for (; restarts <= 3; ++restarts) {
    outcome = petviashvili(*grid, width, opts.tol, opts.max_iter);
    if (outcome.converged) break;
    width *= 0.5;
  }
  if (!outcome.converged) {
    throw NoConvergence("ground-state iteration did not reach residual " + std::to_string(opts.tol) + " after " +
                        std::to_string(opts.max_iter) + " iterations and 3 restarts (last residual " +
                        std::to_string(outcome.residual) + ")");
  }

  GroundStateResult result;
  result.W = grid->make_field(outcome.profile.cast<Complex>());
  result.residual = outcome.residual;
  result.gamma_final = outcome.gamma;
  result.iterations = outcome.iterations;
  result.restarts = restarts;

  const FunctionalReport rep = report(result.W);
  result.kinetic_W = rep.kinetic;
  result.potential_W = rep.potential;
  result.energy_W = rep.energy;
  result.k_opt = rep.potential / std::pow(rep.kinetic, 0.5 * grid->params().p);
  return result;
}

double weinstein(const RadialField& f) {
  const FunctionalReport rep = report(f);
  if (!(rep.potential > 0.0) || !(rep.kinetic > 0.0)) {
    throw DegenerateField("Weinstein quotient needs a nonzero field with positive potential");
  }
  return std::pow(rep.kinetic, 0.5 * f.grid->params().p) / rep.potential;
}

double coercivity_gap(const RadialField& f, const GroundStateResult& gs) {
  const ModelParams& mp = f.grid->params();
  const FunctionalReport rep = report(f);
  constexpr double slack = 1e-9;

  if (!(rep.energy > 0.0)) {
    throw HypothesesNotMet(HypothesesNotMet::Which::energy_not_positive,
                           "coercivity gap needs E(f) > 0, got " + std::to_string(rep.energy));
  }
  if (!(rep.energy <= gs.energy_W * (1.0 + slack))) {
    throw HypothesesNotMet(HypothesesNotMet::Which::energy_not_below_ground_state,
                           "coercivity gap needs E(f) < E(W)");
  }
  if (!(rep.kinetic >= gs.kinetic_W * (1.0 - slack))) {
    throw HypothesesNotMet(HypothesesNotMet::Which::kinetic_not_above_ground_state,
                           "coercivity gap needs ||Delta f|| > ||Delta W||");
  }
  return 1.0 - rep.energy * 2.0 * (mp.dim - mp.b) / ((4.0 - mp.b) * rep.kinetic);
}

}  // namespace ibnls
