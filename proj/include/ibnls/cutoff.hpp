#pragma once

#include <array>
#include <numbers>
#include <vector>

#include "ibnls/radial_grid.hpp"

namespace ibnls {

// The radial profile chi generating the virial cut-off. Piecewise polynomial:
//
//   chi(s) = 2s                        on [0, 1]
//   chi(s) = 2s - 2(s-1)^2 B((s-1)/w)  on (1, 1+w)     (joint blend)
//   chi(s) = 2s - 2(s-1)^2             on [1+w, 1+1/sqrt(2)]
//   chi(s) = (2s - 2(s-1)^2)(1 - B(t)) on (1+1/sqrt(2), 2), t the local chart
//   chi(s) = 0                         on [2, inf)
//
// with B the degree-13 smoothstep (six vanishing derivatives at both ends).
// The blends are one-sided, so chi equals 2s exactly up to and including
// s = 1 and all joints are C^6. Consequences certified by the tests:
// chi >= 0, chi <= 2s, chi' <= 2, chi - s chi' >= 0, strictly decreasing
// bridge, support in [0, 2].
//
// The joint width w trades sup norms of the high derivatives against how
// well a radial grid resolves the joint: the default 0.1 keeps the order-5
// and order-6 derivative spikes quadrature-resolved at working resolutions,
// which the virial diagnostics need once a flow's tail crosses r = R.
class ChiProfile {
public:
  explicit ChiProfile(double joint_width = 0.1);

  // chi and its first six derivatives.
  double eval(double s, int deriv = 0) const;
  // phi(s) = int_0^s chi, by exact piecewise antiderivatives.
  double antiderivative(double s) const;
  // sup_s |chi^{(deriv)}|, by dense per-piece sampling.
  double sup_abs_deriv(int deriv) const;

  double joint_width() const { return joint_width_; }
  static double bridge_start() { return 1.0 + 1.0 / std::numbers::sqrt2_v<double>; }

private:
  struct Piece {
    double s_lo = 0.0;
    double s_hi = 0.0;
    double len = 0.0;
    std::vector<double> coeff;      // polynomial in tau = (s - s_lo)/len
    std::vector<double> anti;       // antiderivative polynomial, anti(0) = 0
    double cumulative = 0.0;        // int_0^{s_lo} chi
  };

  const Piece* find_piece(double s) const;

  double joint_width_ = 0.0;
  std::array<Piece, 4> pieces_;
  double phi_total_ = 0.0;  // int_0^2 chi
};

// Tabulation of phi_R(r) = R^2 phi(r/R) on one grid: radial derivatives
// through order six, the iterated N-dimensional Laplacians, and the
// combination Phi_R multiplying the nonlinear virial density. Also carries
// the R-scaled sup constants used to assemble concrete error budgets.
struct CutoffProfile {
  GridPtr grid;
  double R = 0.0;
  ChiProfile chi;

  Eigen::VectorXd phi;                            // phi_R
  std::array<Eigen::VectorXd, 6> radial_derivs;   // d^j/dr^j phi_R, j = 1..6
  Eigen::VectorXd dphi_over_r;                    // phi_R' / r
  Eigen::VectorXd delta_phi;                      // Laplacian of phi_R
  Eigen::VectorXd delta2_phi;
  Eigen::VectorXd delta3_phi;
  Eigen::VectorXd hess_delta_phi;                 // (Delta phi_R)'' (radial Hessian entry)
  Eigen::VectorXd big_phi;                        // Phi_R

  // Dimensionless sup norms (scaled by the appropriate power of R).
  double sup_hess_delta_scaled = 0.0;  // sup |(Delta phi_R)''| R^2
  double sup_delta2_scaled = 0.0;      // sup |Delta^2 phi_R| R^2
  double sup_delta3_scaled = 0.0;      // sup |Delta^3 phi_R| R^4
  double sup_big_phi_minus_16 = 0.0;   // sup |Phi_R - 16|
};

// Builds the profile; requires 0 < 2R < r_max (throws CutoffTooLarge).
CutoffProfile make_cutoff(const GridPtr& grid, double R, double joint_width = 0.1);

// sup |d^j phi_R| R^{j-2} per R; constancy across R certifies the R^{2-j}
// derivative scaling of the construction.
std::vector<double> scaling_certificate(const std::vector<double>& R_values, int j, double joint_width = 0.1);

}  // namespace ibnls
