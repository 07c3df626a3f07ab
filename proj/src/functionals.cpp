#include "ibnls/functionals.hpp"

#include <cmath>

#include "ibnls/errors.hpp"

namespace ibnls {

FunctionalReport report(const RadialField& f) {
  const RadialGrid& grid = *f.grid;
  const ModelParams& mp = grid.params();

  FunctionalReport rep;
  rep.mass = grid.norm_sq(f.values);

  Eigen::VectorXcd lap = grid.apply_laplacian(f.values);
  rep.kinetic = grid.norm_sq(lap);

  Eigen::VectorXcd du = grid.radial_derivative(f.values);
  rep.grad_sq = grid.norm_sq(du);

  Eigen::VectorXd abs_p = f.values.array().abs().pow(mp.p);
  rep.potential = grid.integrate_singular(abs_p);

  rep.energy = 0.5 * rep.kinetic - rep.potential * (mp.dim - 4) / (2.0 * (mp.dim - mp.b));
  return rep;
}

InequalityReport inequality_report(const RadialField& f, double R, std::optional<double> k_opt) {
  const RadialGrid& grid = *f.grid;
  if (!(R > 0.0) || !(R < grid.r_max())) {
    throw InvalidGridSpec("inequality radius must lie in (0, r_max)");
  }
  const int N = grid.params().dim;
  const FunctionalReport rep = report(f);

  InequalityReport out;
  const double denom_interp = std::sqrt(rep.kinetic) * std::sqrt(rep.mass);
  if (denom_interp > 0.0) out.interp_ratio = rep.grad_sq / denom_interp;

  // Discrete exterior supremum against the Strauss bound.
  double sup_ext = 0.0;
  for (int i = 0; i < grid.n(); ++i) {
    if (grid.nodes()[i] > R) sup_ext = std::max(sup_ext, std::abs(f.values[i]));
  }
  const double denom_strauss =
      std::pow(R, -0.5 * (N - 1)) * std::pow(rep.mass, 0.25) * std::pow(rep.grad_sq, 0.25);
  if (denom_strauss > 0.0) out.strauss_ratio = sup_ext / denom_strauss;

  if (k_opt && rep.kinetic > 0.0) {
    out.sobolev_ratio = rep.potential / (*k_opt * std::pow(rep.kinetic, 0.5 * grid.params().p));
  }
  return out;
}

std::optional<double> exterior_interp_ratio(const RadialField& f, double R) {
  const RadialGrid& grid = *f.grid;
  Eigen::VectorXd abs2 = f.values.array().abs2();
  Eigen::VectorXd lap2 = grid.apply_laplacian(f.values).array().abs2();
  Eigen::VectorXd du2 = grid.radial_derivative(f.values).array().abs2();
  const double mass_ext = grid.integrate_exterior(abs2, R);
  const double kin_ext = grid.integrate_exterior(lap2, R);
  const double grad_ext = grid.integrate_exterior(du2, R);
  const double denom = std::sqrt(kin_ext) * std::sqrt(mass_ext);
  if (!(denom > 0.0)) return std::nullopt;
  return grad_ext / denom;
}

namespace {

// Cubic Lagrange interpolation of nodal data at radius r; even extension
// through the origin, zero beyond r_max.
Complex interp_cubic(const RadialGrid& grid, const Eigen::VectorXcd& v, double r) {
  const int n = grid.n();
  const double h = grid.h();
  if (r >= grid.r_max()) return Complex(0.0, 0.0);
  auto value_at = [&](long k) -> Complex {
    // node index k corresponds to radius (k+1) h; k = -1 is the origin ghost
    // from the even quadratic extension, negative radii mirror.
    if (k >= n) return Complex(0.0, 0.0);
    if (k >= 0) return v[k];
    if (k == -1) return (4.0 * v[0] - v[1]) / 3.0;
    long mirrored = -k - 2;  // radius -(k+1) h
    if (mirrored >= n) return Complex(0.0, 0.0);
    return v[mirrored];
  };
  const double s = r / h - 1.0;  // fractional node index
  const long i0 = static_cast<long>(std::floor(s)) - 1;
  Complex acc(0.0, 0.0);
  for (long j = 0; j < 4; ++j) {
    const long idx = i0 + j;
    double lj = 1.0;
    for (long m = 0; m < 4; ++m) {
      if (m == j) continue;
      lj *= (s - (i0 + m)) / static_cast<double>(j - m);
    }
    acc += lj * value_at(idx);
  }
  return acc;
}

}  // namespace

RadialField critical_rescale(const RadialField& f, double lambda) {
  if (!(lambda > 0.0)) throw InvalidGridSpec("rescaling factor must be positive");
  const RadialGrid& grid = *f.grid;
  const double amp = std::pow(lambda, 0.5 * (grid.params().dim - 4));
  Eigen::VectorXcd out(grid.n());
  for (int i = 0; i < grid.n(); ++i) {
    out[i] = amp * interp_cubic(grid, f.values, lambda * grid.nodes()[i]);
  }
  return grid.make_field(out);
}

}  // namespace ibnls
