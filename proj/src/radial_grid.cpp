#include "ibnls/radial_grid.hpp"

#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "ibnls/errors.hpp"

namespace ibnls {

GridPtr RadialGrid::create(const ModelParams& params, double r_max, int n) {
  if (!(r_max > 0.0)) {
    throw InvalidGridSpec("truncation radius must be positive, got r_max = " + std::to_string(r_max));
  }
  if (n < 16) {
    throw InvalidGridSpec("node count must be at least 16, got n = " + std::to_string(n));
  }

  auto grid = std::shared_ptr<RadialGrid>(new RadialGrid());
  grid->params_ = params;
  grid->r_max_ = r_max;
  grid->n_ = n;
  grid->h_ = r_max / n;

  const int N = params.dim;
  const double b = params.b;
  const double omega = unit_sphere_area(N);
  const double h = grid->h_;

  grid->nodes_.resize(n);
  for (int i = 0; i < n; ++i) grid->nodes_[i] = (i + 1) * h;

  // Cell faces: the first cell absorbs [0, 3h/2] so the inner flux sits at
  // r = 0 where it vanishes with the measure; the last cell is the half cell
  // ending at r_max. Both weight families are exact antiderivatives, so the
  // regular weights telescope to the exact ball volume.
  auto face = [&](int i) {  // outer face radius of cell i (0-based node index)
    return (i == n - 1) ? r_max : (i + 1.5) * h;
  };
  auto cell_integral = [&](double lo, double hi, double expo) {
    return omega * (std::pow(hi, expo) - std::pow(lo, expo)) / expo;
  };

  grid->weights_.resize(n);
  grid->weights_singular_.resize(n);
  grid->r_pow_minus_b_.resize(n);
  double lo = 0.0;
  for (int i = 0; i < n; ++i) {
    const double hi = face(i);
    grid->weights_[i] = cell_integral(lo, hi, static_cast<double>(N));
    grid->weights_singular_[i] = cell_integral(lo, hi, N - b);
    grid->r_pow_minus_b_[i] = grid->weights_singular_[i] / grid->weights_[i];
    lo = hi;
  }

  // Conservative flux Laplacian. Flux coefficient through the face between
  // nodes i and i+1: a_i = omega * r_face^{N-1} / h; the outer Dirichlet face
  // at r_max couples only the diagonal. (W L)_ij is symmetric by construction.
  grid->lap_diag_.resize(n);
  grid->lap_lower_.resize(n);
  grid->lap_upper_.resize(n);
  Eigen::VectorXd a(n);  // a[i] = flux coefficient of face between node i and i+1
  for (int i = 0; i + 1 < n; ++i) {
    const double rf = (i + 1.5) * h;
    a[i] = omega * std::pow(rf, N - 1) / h;
  }
  a[n - 1] = omega * std::pow(r_max, N - 1) / h;  // outer Dirichlet face

  for (int i = 0; i < n; ++i) {
    const double w = grid->weights_[i];
    const double a_in = (i == 0) ? 0.0 : a[i - 1];  // zero flux through the origin
    const double a_out = a[i];
    grid->lap_lower_[i] = (i == 0) ? 0.0 : a_in / w;
    grid->lap_upper_[i] = (i + 1 < n) ? a_out / w : 0.0;
    grid->lap_diag_[i] = -(a_in + a_out) / w;
  }

  return grid;
}

double RadialGrid::integrate(const Eigen::VectorXd& samples) const {
  if (samples.size() != n_) throw LengthMismatch("sample count does not match grid node count");
  return weights_.dot(samples);
}

double RadialGrid::integrate_singular(const Eigen::VectorXd& samples) const {
  if (samples.size() != n_) throw LengthMismatch("sample count does not match grid node count");
  return weights_singular_.dot(samples);
}

double RadialGrid::integrate_exterior(const Eigen::VectorXd& samples, double radius) const {
  if (samples.size() != n_) throw LengthMismatch("sample count does not match grid node count");
  double acc = 0.0;
  for (int i = 0; i < n_; ++i) {
    if (nodes_[i] > radius) acc += weights_[i] * samples[i];
  }
  return acc;
}

double RadialGrid::integrate_singular_exterior(const Eigen::VectorXd& samples, double radius) const {
  if (samples.size() != n_) throw LengthMismatch("sample count does not match grid node count");
  double acc = 0.0;
  for (int i = 0; i < n_; ++i) {
    if (nodes_[i] > radius) acc += weights_singular_[i] * samples[i];
  }
  return acc;
}

namespace {

template <typename Vec>
Vec apply_tridiagonal(const Eigen::VectorXd& lower, const Eigen::VectorXd& diag, const Eigen::VectorXd& upper,
                      const Vec& f) {
  const int n = static_cast<int>(f.size());
  Vec out(n);
  for (int i = 0; i < n; ++i) {
    auto acc = diag[i] * f[i];
    if (i > 0) acc += lower[i] * f[i - 1];
    if (i + 1 < n) acc += upper[i] * f[i + 1];
    out[i] = acc;
  }
  return out;
}

}  // namespace

Eigen::VectorXd RadialGrid::apply_laplacian(const Eigen::VectorXd& f) const {
  if (f.size() != n_) throw GridMismatch("field length does not match grid");
  return apply_tridiagonal(lap_lower_, lap_diag_, lap_upper_, f);
}

Eigen::VectorXcd RadialGrid::apply_laplacian(const Eigen::VectorXcd& f) const {
  if (f.size() != n_) throw GridMismatch("field length does not match grid");
  return apply_tridiagonal(lap_lower_, lap_diag_, lap_upper_, f);
}

Eigen::VectorXd RadialGrid::apply_bilaplacian(const Eigen::VectorXd& f) const {
  return apply_laplacian(apply_laplacian(f));
}

Eigen::VectorXcd RadialGrid::apply_bilaplacian(const Eigen::VectorXcd& f) const {
  return apply_laplacian(apply_laplacian(f));
}

namespace {

// Central first derivative; even ghost at r=0 (f0 = (4 f1 - f2)/3 from the
// quadratic even extension), zero ghost beyond r_max.
template <typename Vec>
Vec first_derivative_impl(const Vec& f, double h) {
  const int n = static_cast<int>(f.size());
  Vec out(n);
  if (n < 2) throw InvalidGridSpec("derivative stencil needs at least two nodes");
  out[0] = 2.0 * (f[1] - f[0]) / (3.0 * h);
  for (int i = 1; i + 1 < n; ++i) out[i] = (f[i + 1] - f[i - 1]) / (2.0 * h);
  out[n - 1] = (-f[n - 2]) / (2.0 * h);
  return out;
}

template <typename Vec>
Vec second_derivative_impl(const Vec& f, double h) {
  const int n = static_cast<int>(f.size());
  Vec out(n);
  out[0] = 2.0 * (f[1] - f[0]) / (3.0 * h * h);
  for (int i = 1; i + 1 < n; ++i) out[i] = (f[i + 1] - 2.0 * f[i] + f[i - 1]) / (h * h);
  out[n - 1] = (f[n - 2] - 2.0 * f[n - 1]) / (h * h);
  return out;
}

}  // namespace

Eigen::VectorXcd RadialGrid::radial_derivative(const Eigen::VectorXcd& f) const {
  if (f.size() != n_) throw GridMismatch("field length does not match grid");
  return first_derivative_impl(f, h_);
}

Eigen::VectorXd RadialGrid::radial_derivative(const Eigen::VectorXd& f) const {
  if (f.size() != n_) throw GridMismatch("field length does not match grid");
  return first_derivative_impl(f, h_);
}

Eigen::VectorXcd RadialGrid::second_radial_derivative(const Eigen::VectorXcd& f) const {
  if (f.size() != n_) throw GridMismatch("field length does not match grid");
  return second_derivative_impl(f, h_);
}

void RadialGrid::build_eigen() const {
  // Symmetrize: S = W^{1/2} L W^{-1/2} has entries (W L)_ij / sqrt(w_i w_j),
  // exactly symmetric for the flux-form L.
  sqrt_w_ = weights_.array().sqrt();
  Eigen::MatrixXd S = Eigen::MatrixXd::Zero(n_, n_);
  for (int i = 0; i < n_; ++i) {
    S(i, i) = lap_diag_[i];
    if (i + 1 < n_) {
      const double off = lap_upper_[i] * sqrt_w_[i] / sqrt_w_[i + 1];
      S(i, i + 1) = off;
      S(i + 1, i) = off;
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(S);
  if (solver.info() != Eigen::Success) {
    throw IndefiniteOperator("eigen-decomposition of the radial Laplacian failed");
  }
  eigvals_ = solver.eigenvalues();
  eigvecs_ = solver.eigenvectors();
}

const Eigen::VectorXd& RadialGrid::laplacian_eigenvalues() const {
  std::call_once(eigen_once_, [this] { build_eigen(); });
  return eigvals_;
}

Eigen::VectorXd RadialGrid::to_eigenbasis(const Eigen::VectorXd& f) const {
  std::call_once(eigen_once_, [this] { build_eigen(); });
  return eigvecs_.transpose() * (sqrt_w_.array() * f.array()).matrix();
}

Eigen::VectorXd RadialGrid::from_eigenbasis(const Eigen::VectorXd& coeffs) const {
  std::call_once(eigen_once_, [this] { build_eigen(); });
  Eigen::VectorXd scaled = eigvecs_ * coeffs;
  return (scaled.array() / sqrt_w_.array()).matrix();
}

Eigen::VectorXcd RadialGrid::to_eigenbasis(const Eigen::VectorXcd& f) const {
  std::call_once(eigen_once_, [this] { build_eigen(); });
  Eigen::VectorXcd scaled = (f.array() * sqrt_w_.array().cast<Complex>()).matrix();
  return eigvecs_.transpose() * scaled;
}

Eigen::VectorXcd RadialGrid::from_eigenbasis(const Eigen::VectorXcd& coeffs) const {
  std::call_once(eigen_once_, [this] { build_eigen(); });
  Eigen::VectorXcd scaled = eigvecs_ * coeffs;
  return (scaled.array() / sqrt_w_.array().cast<Complex>()).matrix();
}

Eigen::VectorXd RadialGrid::solve_bilaplacian(const Eigen::VectorXd& rhs) const {
  const Eigen::VectorXd& lambda = laplacian_eigenvalues();
  const double floor = 1e-14 * lambda.cwiseAbs().maxCoeff();
  Eigen::VectorXd coeffs = to_eigenbasis(rhs);
  for (int k = 0; k < n_; ++k) {
    const double l2 = lambda[k] * lambda[k];
    if (l2 < floor * floor) {
      throw IndefiniteOperator("discrete bilaplacian is numerically singular");
    }
    coeffs[k] /= l2;
  }
  return from_eigenbasis(coeffs);
}

double RadialGrid::inner(const Eigen::VectorXd& f, const Eigen::VectorXd& g) const {
  if (f.size() != n_ || g.size() != n_) throw GridMismatch("field length does not match grid");
  return (weights_.array() * f.array() * g.array()).sum();
}

double RadialGrid::norm_sq(const Eigen::VectorXcd& f) const {
  if (f.size() != n_) throw GridMismatch("field length does not match grid");
  return (weights_.array() * f.array().abs2()).sum();
}

RadialField RadialGrid::make_field(const Eigen::VectorXcd& values) const {
  if (values.size() != n_) throw GridMismatch("field length does not match grid");
  return RadialField{shared_from_this(), values};
}

RadialField RadialGrid::zero_field() const { return RadialField{shared_from_this(), Eigen::VectorXcd::Zero(n_)}; }

void require_same_grid(const RadialField& a, const RadialField& b) {
  if (a.grid.get() != b.grid.get()) throw GridMismatch("fields live on different grids");
}

void require_grid(const RadialField& f, const RadialGrid& grid) {
  if (f.grid.get() != &grid) throw GridMismatch("field does not live on the given grid");
}

}  // namespace ibnls
