#pragma once

#include <optional>

#include "ibnls/radial_grid.hpp"

namespace ibnls {

// Conserved and diagnostic functionals of one field. energy is assembled as
// kinetic/2 - potential (N-4)/(2(N-b)) from the same pass.
struct FunctionalReport {
  double mass = 0.0;       // ||u||_{L^2}^2
  double kinetic = 0.0;    // ||Delta u||_{L^2}^2
  double grad_sq = 0.0;    // ||grad u||_{L^2}^2
  double potential = 0.0;  // int |x|^{-b} |u|^p
  double energy = 0.0;
};

FunctionalReport report(const RadialField& f);

// Ratios of the gradient interpolation, Strauss, and critical Sobolev
// inequalities. Entries are absent when their denominators vanish.
struct InequalityReport {
  std::optional<double> interp_ratio;   // ||grad u||^2 / (||Delta u|| ||u||)
  std::optional<double> strauss_ratio;  // sup_{r>R}|u| / (R^{-(N-1)/2} ||u||^{1/2} ||grad u||^{1/2})
  std::optional<double> sobolev_ratio;  // potential / (K_opt kinetic^{p/2}); needs k_opt
};

InequalityReport inequality_report(const RadialField& f, double R, std::optional<double> k_opt = std::nullopt);

// Exterior-ring variant of the gradient interpolation ratio, all three norms
// restricted to r > R.
std::optional<double> exterior_interp_ratio(const RadialField& f, double R);

// Resamples f under the critical rescaling f_lambda(r) = lambda^{(N-4)/2} f(lambda r)
// onto the same grid (cubic interpolation, zero beyond r_max). Leaves kinetic
// and potential invariant up to quadrature error.
RadialField critical_rescale(const RadialField& f, double lambda);

}  // namespace ibnls
