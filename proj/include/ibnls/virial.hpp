#pragma once

#include <array>
#include <utility>

#include "ibnls/cutoff.hpp"
#include "ibnls/functionals.hpp"
#include "ibnls/radial_grid.hpp"

namespace ibnls {

// Morawetz potential and the localized virial rate, term by term. The six
// entries of `terms` follow the derivative identity of the flow:
//   [0] -4 int (Delta phi)'' |u_r|^2
//   [1]    int Delta^3 phi |u|^2
//   [2]  8 int Hess(phi) contracted twice with Hess(u)
//   [3] -2 int Delta^2 phi |grad u|^2
//   [4] -(8-2b)/(N-b) int Delta phi |x|^{-b} |u|^p
//   [5]  2(N-4)/(N-b) int grad phi . grad(|x|^{-b}) |u|^p
struct VirialReport {
  double v = 0.0;
  double rate_exact = 0.0;
  double rate_localized = 0.0;
  double rate_bound_main = 0.0;
  double tail_error = 0.0;
  std::array<double, 6> terms{};
};

// V = -2 Im int phi_R'(r) (d_r u) conj(u) dx.
double morawetz(const RadialField& f, const CutoffProfile& c);

// The unlocalized rate 16 ||Delta u||^2 - 16 int |x|^{-b}|u|^p (the phi = r^2
// limit of the localized identity).
double rate_exact(const RadialField& f);

// Both algebraic forms of the unlocalized rate: the kinetic/potential form
// and the energy form 32(N-b)/(N-4) E - 16(4-b)/(N-4) ||Delta u||^2. They
// agree identically; computing both guards the functional assembly.
std::pair<double, double> rate_exact_forms(const FunctionalReport& rep, const ModelParams& params);

// Evaluates all six localized terms in radial form and assembles the report.
VirialReport rate_localized(const RadialField& f, const CutoffProfile& c);

// Exterior defect int_{r>R} (Phi_R - 16) |x|^{-b} |u|^p dx.
double tail_error(const RadialField& f, const CutoffProfile& c);

struct RateBound {
  double main = 0.0;          // 32(N-b)/(N-4) E - 16(4-b)/(N-4) ||Delta u||^2
  double error_budget = 0.0;  // concrete bound assembled from measured cutoff constants
};

// The two leading terms of the localized rate bound plus an explicit error
// budget: c2 R^{-2} ||grad u||^2 covers the Hessian-of-Delta-phi and
// Delta^2-phi terms, c1 R^{-4} ||u||^2 the Delta^3-phi term, and the Strauss
// tail R^{-b-(N-1)(4-b)/(N-4)} term carries its mass and gradient powers.
RateBound rate_bound(const RadialField& f, const CutoffProfile& c);

}  // namespace ibnls
