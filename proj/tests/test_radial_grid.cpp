#include <doctest.h>

#include <cmath>

#include "ibnls/errors.hpp"
#include "ibnls/model.hpp"
#include "ibnls/radial_grid.hpp"

using namespace ibnls;

namespace {

Eigen::VectorXd sample(const RadialGrid& grid, double (*f)(double)) {
  Eigen::VectorXd out(grid.n());
  for (int i = 0; i < grid.n(); ++i) out[i] = f(grid.nodes()[i]);
  return out;
}

// Gamma-function oracle: int_{R^N} |x|^m e^{-a |x|^2} dx
double gaussian_moment(int dim, double m, double a) {
  return unit_sphere_area(dim) * 0.5 * std::tgamma(0.5 * (m + dim)) / std::pow(a, 0.5 * (m + dim));
}

}  // namespace

TEST_CASE("grid construction and validation") {
  const ModelParams params = make_params(5, 1.0);
  GridPtr grid = RadialGrid::create(params, 20.0, 400);
  CHECK(grid->h() == doctest::Approx(0.05).epsilon(1e-15));
  CHECK(grid->nodes()[0] == doctest::Approx(0.05));
  CHECK(grid->nodes()[399] == doctest::Approx(20.0));
  CHECK(unit_sphere_area(5) == doctest::Approx(8.0 * M_PI * M_PI / 3.0));

  CHECK_THROWS_AS(RadialGrid::create(params, -1.0, 100), InvalidGridSpec);
  CHECK_THROWS_AS(RadialGrid::create(params, 10.0, 4), InvalidGridSpec);
}

TEST_CASE("quadrature: ball volume is exact and weights are positive") {
  for (int dim : {5, 6, 8}) {
    const ModelParams params = make_params(dim, 1.0);
    GridPtr grid = RadialGrid::create(params, 12.0, 256);
    CHECK(grid->weights().minCoeff() > 0.0);
    const double ball = grid->integrate(Eigen::VectorXd::Ones(grid->n()));
    const double exact = unit_sphere_area(dim) * std::pow(12.0, dim) / dim;
    CHECK(ball == doctest::Approx(exact).epsilon(1e-3));  // exact up to roundoff in practice
    CHECK(std::abs(ball - exact) / exact < 1e-12);
  }
}

TEST_CASE("quadrature: Gaussian closed form within 1e-4") {
  const ModelParams params = make_params(5, 1.0);
  GridPtr grid = RadialGrid::create(params, 8.0, 1600);
  const Eigen::VectorXd g = sample(*grid, +[](double r) { return std::exp(-2.0 * r * r); });
  const double exact = std::pow(M_PI / 2.0, 2.5);
  CHECK(exact == doctest::Approx(3.0925).epsilon(1e-4));
  CHECK(grid->integrate(g) == doctest::Approx(exact).epsilon(1e-4));
  CHECK(grid->integrate(Eigen::VectorXd::Zero(grid->n())) == 0.0);
  CHECK_THROWS_AS(grid->integrate(Eigen::VectorXd::Ones(7)), LengthMismatch);
}

TEST_CASE("quadrature: second-order convergence on a smooth bump") {
  const ModelParams params = make_params(6, 1.0);
  auto value_at = [&](int n) {
    GridPtr grid = RadialGrid::create(params, 10.0, n);
    const Eigen::VectorXd g = sample(*grid, +[](double r) { return r * r * std::exp(-r * r); });
    return grid->integrate(g);
  };
  const double reference = value_at(8192);  // Richardson-style fine-grid oracle
  const double err_n = std::abs(value_at(128) - reference);
  const double err_2n = std::abs(value_at(256) - reference);
  CHECK(err_n / err_2n > 3.0);
  CHECK(err_n / err_2n < 5.0);
}

TEST_CASE("singular quadrature uses exact cell integrals") {
  const ModelParams params = make_params(6, 1.5);
  GridPtr grid = RadialGrid::create(params, 10.0, 800);
  // int |x|^{-b} e^{-2 r^2} dx against the Gamma oracle
  const Eigen::VectorXd g = sample(*grid, +[](double r) { return std::exp(-2.0 * r * r); });
  const double exact = gaussian_moment(6, -1.5, 2.0);
  CHECK(grid->integrate_singular(g) == doctest::Approx(exact).epsilon(1e-4));
}

TEST_CASE("laplacian: symbolic oracle for the Gaussian") {
  const ModelParams params = make_params(6, 1.0);
  auto max_err = [&](int n) {
    GridPtr grid = RadialGrid::create(params, 16.0, n);
    Eigen::VectorXd f(grid->n()), exact(grid->n());
    for (int i = 0; i < grid->n(); ++i) {
      const double r = grid->nodes()[i];
      f[i] = std::exp(-r * r);
      exact[i] = (4.0 * r * r - 2.0 * params.dim) * std::exp(-r * r);
    }
    const Eigen::VectorXd lap = grid->apply_laplacian(f);
    double err = 0.0;
    for (int i = 0; i < grid->n() - 8; ++i) err = std::max(err, std::abs(lap[i] - exact[i]));
    return err;
  };
  const double err_512 = max_err(512);
  const double err_1024 = max_err(1024);
  CHECK(err_512 < 0.05);
  CHECK(err_512 / err_1024 > 3.0);  // order-2 refinement
  CHECK(err_512 / err_1024 < 5.0);
}

TEST_CASE("laplacian: exact on quadratics and constants in interior rows") {
  const ModelParams params = make_params(7, 1.0);
  GridPtr grid = RadialGrid::create(params, 10.0, 128);
  Eigen::VectorXd r2(grid->n());
  for (int i = 0; i < grid->n(); ++i) r2[i] = grid->nodes()[i] * grid->nodes()[i];
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(grid->n());
  const Eigen::VectorXd lap_r2 = grid->apply_laplacian(r2);
  const Eigen::VectorXd lap_const = grid->apply_laplacian(ones);
  for (int i = 0; i + 1 < grid->n(); ++i) {
    CHECK(lap_r2[i] == doctest::Approx(2.0 * params.dim).epsilon(1e-9));
    CHECK(std::abs(lap_const[i]) < 1e-9);
  }
  const Eigen::VectorXd short_vec = Eigen::VectorXd::Ones(12);
  CHECK_THROWS_AS(grid->apply_laplacian(short_vec), GridMismatch);
}

TEST_CASE("bilaplacian: symbolic oracle and composition structure") {
  const ModelParams params = make_params(6, 1.0);
  GridPtr grid = RadialGrid::create(params, 16.0, 1024);
  const int N = params.dim;
  Eigen::VectorXd f(grid->n()), exact(grid->n());
  for (int i = 0; i < grid->n(); ++i) {
    const double r = grid->nodes()[i];
    f[i] = std::exp(-r * r);
    // Delta^2 e^{-r^2} = (4N^2 + 8N - (16N + 32) r^2 + 16 r^4) e^{-r^2}
    exact[i] = (4.0 * N * N + 8.0 * N - (16.0 * N + 32.0) * r * r + 16.0 * std::pow(r, 4)) * std::exp(-r * r);
  }
  const Eigen::VectorXd bilap = grid->apply_bilaplacian(f);
  double err = 0.0;
  for (int i = 0; i < grid->n() - 8; ++i) err = std::max(err, std::abs(bilap[i] - exact[i]));
  CHECK(err < 0.05 * (4.0 * N * N + 8.0 * N));

  // r^2 has constant Laplacian, so the bilaplacian vanishes in the deep interior
  Eigen::VectorXd r2(grid->n());
  for (int i = 0; i < grid->n(); ++i) r2[i] = grid->nodes()[i] * grid->nodes()[i];
  // the composed stencil amplifies roundoff by r_max^2/h^4; "zero" sits at
  // 1e-6 here, five orders below the natural scale 4N^2 + 8N of the oracle
  const Eigen::VectorXd bilap_r2 = grid->apply_bilaplacian(r2);
  for (int i = 0; i + 2 < grid->n(); ++i) CHECK(std::abs(bilap_r2[i]) < 1e-5);
}

TEST_CASE("spectral structure: self-adjointness, nonnegativity, eigen-consistency") {
  const ModelParams params = make_params(6, 1.0);
  GridPtr grid = RadialGrid::create(params, 12.0, 192);

  Eigen::VectorXd f = sample(*grid, +[](double r) { return std::exp(-r * r); });
  Eigen::VectorXd g = sample(*grid, +[](double r) { return r * r * std::exp(-0.5 * r * r); });

  const double lhs = grid->inner(grid->apply_laplacian(f), g);
  const double rhs = grid->inner(f, grid->apply_laplacian(g));
  CHECK(std::abs(lhs - rhs) / std::abs(lhs) < 1e-8);

  CHECK(grid->inner(grid->apply_bilaplacian(f), f) >= 0.0);
  CHECK(grid->inner(grid->apply_bilaplacian(g), g) >= 0.0);

  // all eigenvalues real negative; bilaplacian spectrum is their square.
  // Defects are measured in the weighted norm of the construction (the
  // euclidean nodal norm overweights the origin cells by w^{-1/2}).
  const Eigen::VectorXd& lambda = grid->laplacian_eigenvalues();
  CHECK(lambda.maxCoeff() < 0.0);
  for (int k : {0, 17, 96, 191}) {
    Eigen::VectorXd coeffs = Eigen::VectorXd::Zero(grid->n());
    coeffs[k] = 1.0;
    const Eigen::VectorXd v = grid->from_eigenbasis(coeffs);
    const Eigen::VectorXd defect = grid->apply_bilaplacian(v) - lambda[k] * lambda[k] * v;
    const double rel = std::sqrt(grid->inner(defect, defect)) / (lambda[k] * lambda[k]);
    CHECK(rel < 1e-6);
  }
}

TEST_CASE("bilaplacian solve inverts the composed operator") {
  const ModelParams params = make_params(8, 2.0);
  GridPtr grid = RadialGrid::create(params, 12.0, 160);
  const Eigen::VectorXd rhs = sample(*grid, +[](double r) { return std::exp(-r * r) * (1.0 + r); });
  const Eigen::VectorXd u = grid->solve_bilaplacian(rhs);
  const Eigen::VectorXd defect = grid->apply_bilaplacian(u) - rhs;
  // the roundtrip floor is eps * cond(L^2)
  const double rel = std::sqrt(grid->inner(defect, defect) / grid->inner(rhs, rhs));
  CHECK(rel < 1e-6);
}

TEST_CASE("derivative stencils are exact on quadratics") {
  const ModelParams params = make_params(6, 1.0);
  GridPtr grid = RadialGrid::create(params, 10.0, 100);
  Eigen::VectorXd r2(grid->n());
  for (int i = 0; i < grid->n(); ++i) r2[i] = grid->nodes()[i] * grid->nodes()[i];
  const Eigen::VectorXd d1 = grid->radial_derivative(r2);
  for (int i = 0; i + 1 < grid->n(); ++i) {
    CHECK(d1[i] == doctest::Approx(2.0 * grid->nodes()[i]).epsilon(1e-12));
  }
}
