#pragma once

#include <complex>
#include <memory>
#include <mutex>
#include <vector>

#include <Eigen/Dense>

#include "ibnls/model.hpp"

namespace ibnls {

using Complex = std::complex<double>;

class RadialGrid;
using GridPtr = std::shared_ptr<const RadialGrid>;

// Complex radial profile tabulated on the nodes of one grid.
struct RadialField {
  GridPtr grid;
  Eigen::VectorXcd values;

  int size() const { return static_cast<int>(values.size()); }
};

// Uniform radial grid on (0, r_max] with nodes r_i = i h, i = 1..n (the
// origin is excluded; regularity there is built into the operators). The
// quadrature carries the full N-dimensional measure: weights are exact cell
// integrals of omega_{N-1} r^{N-1}, the first cell reaching down to r = 0,
// so that sum(w) = omega_{N-1} r_max^N / N identically. A parallel set of
// weights integrates the singular measure omega_{N-1} r^{N-1-b} in closed
// form, which keeps full quadrature order through the |x|^{-b} factor.
//
// The Laplacian is the conservative flux form of d_rr + (N-1)/r d_r. With the
// exact cell masses it annihilates constants in rows 1..n-1, reproduces
// Delta(r^2) = 2N exactly at those rows, and W L is a symmetric matrix, i.e.
// L is self-adjoint in the weighted inner product. The outer boundary takes a
// homogeneous Dirichlet ghost (decaying states), which also makes L strictly
// negative definite. The bilaplacian is L applied twice; its spectrum is the
// squared Laplacian spectrum by self-adjointness.
class RadialGrid : public std::enable_shared_from_this<RadialGrid> {
public:
  static GridPtr create(const ModelParams& params, double r_max, int n);

  const ModelParams& params() const { return params_; }
  double r_max() const { return r_max_; }
  int n() const { return n_; }
  double h() const { return h_; }

  const Eigen::VectorXd& nodes() const { return nodes_; }
  const Eigen::VectorXd& weights() const { return weights_; }
  const Eigen::VectorXd& weights_singular() const { return weights_singular_; }
  // Cell-averaged |x|^{-b} under the r^{N-1} measure: weights_singular / weights.
  const Eigen::VectorXd& r_pow_minus_b() const { return r_pow_minus_b_; }

  // Quadrature of int_{R^N} f(|x|) dx for real or complex nodal samples.
  double integrate(const Eigen::VectorXd& samples) const;
  // Quadrature of int_{R^N} |x|^{-b} f(|x|) dx.
  double integrate_singular(const Eigen::VectorXd& samples) const;
  // Restriction of the two above to nodes with r > radius.
  double integrate_exterior(const Eigen::VectorXd& samples, double radius) const;
  double integrate_singular_exterior(const Eigen::VectorXd& samples, double radius) const;

  // Tridiagonal application of the discrete radial Laplacian.
  Eigen::VectorXd apply_laplacian(const Eigen::VectorXd& f) const;
  Eigen::VectorXcd apply_laplacian(const Eigen::VectorXcd& f) const;
  // L applied twice (shares the boundary treatment).
  Eigen::VectorXd apply_bilaplacian(const Eigen::VectorXd& f) const;
  Eigen::VectorXcd apply_bilaplacian(const Eigen::VectorXcd& f) const;

  // Second-order first/second radial derivative stencils with an even
  // extension ghost at r = 0 (enforcing f_r(0) = 0) and a zero ghost at the
  // outer edge.
  Eigen::VectorXcd radial_derivative(const Eigen::VectorXcd& f) const;
  Eigen::VectorXd radial_derivative(const Eigen::VectorXd& f) const;
  Eigen::VectorXcd second_radial_derivative(const Eigen::VectorXcd& f) const;

  // Spectral machinery of the self-adjoint Laplacian: L = V diag(lambda) V^T W
  // with V^T W V = I. Built lazily on first use and cached.
  const Eigen::VectorXd& laplacian_eigenvalues() const;
  Eigen::VectorXd to_eigenbasis(const Eigen::VectorXd& f) const;
  Eigen::VectorXd from_eigenbasis(const Eigen::VectorXd& coeffs) const;
  Eigen::VectorXcd to_eigenbasis(const Eigen::VectorXcd& f) const;
  Eigen::VectorXcd from_eigenbasis(const Eigen::VectorXcd& coeffs) const;

  // Solves L^2 u = rhs through the eigen-decomposition. Throws
  // IndefiniteOperator if the spectrum degenerates.
  Eigen::VectorXd solve_bilaplacian(const Eigen::VectorXd& rhs) const;

  // Weighted inner products/norms over the N-dimensional measure.
  double inner(const Eigen::VectorXd& f, const Eigen::VectorXd& g) const;
  double norm_sq(const Eigen::VectorXcd& f) const;

  RadialField make_field(const Eigen::VectorXcd& values) const;
  RadialField zero_field() const;

private:
  RadialGrid() = default;
  void build_eigen() const;

  ModelParams params_;
  double r_max_ = 0.0;
  int n_ = 0;
  double h_ = 0.0;

  Eigen::VectorXd nodes_;
  Eigen::VectorXd weights_;
  Eigen::VectorXd weights_singular_;
  Eigen::VectorXd r_pow_minus_b_;

  // Tridiagonal L: lower_[i] f_{i-1} + diag_[i] f_i + upper_[i] f_{i+1}.
  Eigen::VectorXd lap_diag_;
  Eigen::VectorXd lap_lower_;
  Eigen::VectorXd lap_upper_;

  // Lazy spectral data: sqrt-weight scaling, orthogonal Q, eigenvalues.
  mutable std::once_flag eigen_once_;
  mutable Eigen::VectorXd sqrt_w_;
  mutable Eigen::MatrixXd eigvecs_;  // Q of the symmetrized operator
  mutable Eigen::VectorXd eigvals_;
};

// Throws GridMismatch unless both fields live on the same grid object.
void require_same_grid(const RadialField& a, const RadialField& b);
void require_grid(const RadialField& f, const RadialGrid& grid);

}  // namespace ibnls
