#include "ibnls/virial.hpp"

#include <cmath>

#include "ibnls/errors.hpp"

namespace ibnls {

namespace {

void require_cutoff_grid(const RadialField& f, const CutoffProfile& c) {
  if (f.grid.get() != c.grid.get()) throw GridMismatch("field and cutoff live on different grids");
}

}  // namespace

double morawetz(const RadialField& f, const CutoffProfile& c) {
  require_cutoff_grid(f, c);
  const RadialGrid& grid = *f.grid;
  Eigen::VectorXcd du = grid.radial_derivative(f.values);
  Eigen::VectorXd integrand(grid.n());
  for (int i = 0; i < grid.n(); ++i) {
    integrand[i] = c.radial_derivs[0][i] * std::imag(du[i] * std::conj(f.values[i]));
  }
  return -2.0 * grid.integrate(integrand);
}

std::pair<double, double> rate_exact_forms(const FunctionalReport& rep, const ModelParams& params) {
  const double direct = 16.0 * rep.kinetic - 16.0 * rep.potential;
  const double energy_form = 32.0 * (params.dim - params.b) / (params.dim - 4) * rep.energy -
                             16.0 * (4.0 - params.b) / (params.dim - 4) * rep.kinetic;
  return {direct, energy_form};
}

double rate_exact(const RadialField& f) {
  return rate_exact_forms(report(f), f.grid->params()).first;
}

VirialReport rate_localized(const RadialField& f, const CutoffProfile& c) {
  require_cutoff_grid(f, c);
  const RadialGrid& grid = *f.grid;
  const ModelParams& mp = grid.params();
  const int n = grid.n();

  const Eigen::VectorXcd& u = f.values;
  Eigen::VectorXcd du = grid.radial_derivative(u);
  Eigen::VectorXcd d2u = grid.second_radial_derivative(u);

  Eigen::VectorXd du_sq = du.array().abs2();
  Eigen::VectorXd u_sq = u.array().abs2();
  Eigen::VectorXd u_pow_p = u.array().abs().pow(mp.p);

  // [0] and [3]: exterior-supported derivative weights against |u_r|^2.
  Eigen::VectorXd t0_integrand(n), t3_integrand(n), t1_integrand(n), t2_integrand(n);
  for (int i = 0; i < n; ++i) {
    t0_integrand[i] = c.hess_delta_phi[i] * du_sq[i];
    t1_integrand[i] = c.delta3_phi[i] * u_sq[i];
    t3_integrand[i] = c.delta2_phi[i] * du_sq[i];
  }

  // [2]: radial reduction of the double Hessian contraction. With
  // a = phi'/r, bb = (phi'' - phi'/r)/r^2, A = u_r/r, B = (u_rr - u_r/r)/r^2:
  //   N a|A|^2 + r^2 (2a Re(A conj B) + bb |A|^2)
  //   + r^4 (a |B|^2 + 2 bb Re(A conj B)) + r^6 bb |B|^2.
  for (int i = 0; i < n; ++i) {
    const double r = grid.nodes()[i];
    const double r2 = r * r;
    const double a = c.dphi_over_r[i];
    const double bb = (c.radial_derivs[1][i] - c.dphi_over_r[i]) / r2;
    const Complex A = du[i] / r;
    const Complex B = (d2u[i] - du[i] / r) / r2;
    const double A2 = std::norm(A);
    const double B2 = std::norm(B);
    const double AB = std::real(A * std::conj(B));
    t2_integrand[i] = mp.dim * a * A2 + r2 * (2.0 * a * AB + bb * A2) + r2 * r2 * (a * B2 + 2.0 * bb * AB) +
                      r2 * r2 * r2 * bb * B2;
  }

  Eigen::VectorXd t4_integrand(n), t5_integrand(n);
  for (int i = 0; i < n; ++i) {
    t4_integrand[i] = c.delta_phi[i] * u_pow_p[i];
    t5_integrand[i] = c.dphi_over_r[i] * u_pow_p[i];
  }

  VirialReport rep;
  rep.terms[0] = -4.0 * grid.integrate(t0_integrand);
  rep.terms[1] = grid.integrate(t1_integrand);
  rep.terms[2] = 8.0 * grid.integrate(t2_integrand);
  rep.terms[3] = -2.0 * grid.integrate(t3_integrand);
  rep.terms[4] = -(8.0 - 2.0 * mp.b) / (mp.dim - mp.b) * grid.integrate_singular(t4_integrand);
  // grad phi . grad(|x|^{-b}) = -b (phi'/r) |x|^{-b}
  rep.terms[5] = -2.0 * mp.b * (mp.dim - 4) / (mp.dim - mp.b) * grid.integrate_singular(t5_integrand);

  rep.rate_localized = 0.0;
  for (double term : rep.terms) rep.rate_localized += term;

  const FunctionalReport fr = report(f);
  const auto [direct, energy_form] = rate_exact_forms(fr, mp);
  rep.rate_exact = direct;
  rep.rate_bound_main = energy_form;
  rep.v = morawetz(f, c);
  rep.tail_error = tail_error(f, c);
  return rep;
}

double tail_error(const RadialField& f, const CutoffProfile& c) {
  require_cutoff_grid(f, c);
  const RadialGrid& grid = *f.grid;
  Eigen::VectorXd integrand(grid.n());
  Eigen::VectorXd u_pow_p = f.values.array().abs().pow(grid.params().p);
  for (int i = 0; i < grid.n(); ++i) {
    integrand[i] = (c.big_phi[i] - 16.0) * u_pow_p[i];
  }
  return grid.integrate_singular_exterior(integrand, c.R);
}

RateBound rate_bound(const RadialField& f, const CutoffProfile& c) {
  require_cutoff_grid(f, c);
  const ModelParams& mp = f.grid->params();
  const FunctionalReport rep = report(f);
  const double R = c.R;

  RateBound bound;
  bound.main = rate_exact_forms(rep, mp).second;

  const double c2 = 4.0 * c.sup_hess_delta_scaled + 2.0 * c.sup_delta2_scaled;
  const double c1 = c.sup_delta3_scaled;
  // Strauss tail: sup|Phi-16| R^{-b} M(u) (C_st R^{-(N-1)/2})^alpha
  //   ||u||^{alpha/2} ||grad u||^{alpha/2}, with C_st = sqrt(2/omega_{N-1}).
  const double c_st = std::sqrt(2.0 / unit_sphere_area(mp.dim));
  const double tail_exp = mp.b + 0.5 * (mp.dim - 1) * mp.alpha;
  const double tail = c.sup_big_phi_minus_16 * std::pow(c_st, mp.alpha) * std::pow(R, -tail_exp) *
                      std::pow(rep.mass, 1.0 + 0.25 * mp.alpha) * std::pow(rep.grad_sq, 0.25 * mp.alpha);

  bound.error_budget = c2 / (R * R) * rep.grad_sq + c1 / (R * R * R * R) * rep.mass + tail;
  return bound;
}

}  // namespace ibnls
