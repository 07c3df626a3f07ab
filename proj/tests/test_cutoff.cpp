#include <doctest.h>

#include <cmath>

#include "ibnls/cutoff.hpp"
#include "ibnls/errors.hpp"

using namespace ibnls;

TEST_CASE("chi: exact branches and the bridge joint value") {
  ChiProfile chi;
  CHECK(chi.eval(0.5) == 0.5 * 2.0);
  CHECK(chi.eval(1.0) == 2.0);  // the blend is one-sided, s = 1 is exact
  CHECK(chi.eval(0.25, 1) == 2.0);
  const double s_star = ChiProfile::bridge_start();
  CHECK(chi.eval(s_star) == doctest::Approx(1.0 + std::sqrt(2.0)).epsilon(1e-14));
  CHECK(chi.eval(s_star) == doctest::Approx(2.414).epsilon(1e-3));
  CHECK(chi.eval(2.0) == 0.0);
  CHECK(chi.eval(2.5) == 0.0);
  CHECK(chi.eval(3.0, 4) == 0.0);
  // derivative continuity across the bridge joint
  CHECK(chi.eval(s_star - 1e-9, 1) == doctest::Approx(chi.eval(s_star + 1e-9, 1)).epsilon(1e-6));
  // quadratic branch slope at the joint: 2 - 4(s*-1) = 2 - 2 sqrt(2)
  CHECK(chi.eval(s_star, 1) == doctest::Approx(2.0 - 2.0 * std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("chi: strictly decreasing bridge and global shape bounds") {
  ChiProfile chi;
  const double s_star = ChiProfile::bridge_start();
  double prev = chi.eval(s_star);
  for (int k = 1; k <= 400; ++k) {
    const double s = s_star + (2.0 - s_star) * k / 401.0;
    const double val = chi.eval(s);
    CHECK(val < prev);
    CHECK(val >= 0.0);
    prev = val;
  }
  // near s = 2 the analytic values vanish to seventh order, so polynomial
  // evaluation noise (~1e-10) is the measurement floor
  for (int k = 0; k <= 1000; ++k) {
    const double s = 2.2 * k / 1000.0;
    CHECK(chi.eval(s) <= 2.0 * s + 1e-9);
    CHECK(chi.eval(s, 1) <= 2.0 + 1e-9);
    CHECK(chi.eval(s) - s * chi.eval(s, 1) >= -1e-9);
  }
  // all six derivatives stay bounded (the construction is C^6)
  for (int j = 0; j <= 6; ++j) CHECK(std::isfinite(chi.sup_abs_deriv(j)));
}

TEST_CASE("cutoff profile: quadratic identities inside the ball at every node") {
  GridPtr grid = RadialGrid::create(make_params(6, 1.0), 24.0, 700);
  const double R = 8.0;
  const CutoffProfile c = make_cutoff(grid, R);
  for (int i = 0; i < grid->n(); ++i) {
    const double r = grid->nodes()[i];
    if (r <= R) {
      CHECK(std::abs(c.phi[i] - r * r) <= 1e-13 * r * r);
      CHECK(std::abs(c.radial_derivs[0][i] - 2.0 * r) <= 1e-13 * (2.0 * r));
      CHECK(c.radial_derivs[1][i] == 2.0);
      CHECK(std::abs(c.big_phi[i] - 16.0) <= 1e-12);
      CHECK(std::abs(c.delta_phi[i] - 2.0 * 6.0) <= 1e-12);
      CHECK(std::abs(c.delta2_phi[i]) <= 1e-9);
      CHECK(std::abs(c.delta3_phi[i]) <= 1e-6);
    }
  }
}

TEST_CASE("cutoff profile: pointwise bounds and supports at every node") {
  GridPtr grid = RadialGrid::create(make_params(7, 2.0), 30.0, 640);
  const double R = 9.0;
  const CutoffProfile c = make_cutoff(grid, R);
  double phi_at_2R = 0.0;
  for (int i = 0; i < grid->n(); ++i) {
    const double r = grid->nodes()[i];
    CHECK(c.radial_derivs[0][i] >= -1e-9);                           // phi' >= 0
    CHECK(c.radial_derivs[0][i] <= 2.0 * r + 1e-9);                  // phi' <= 2r
    CHECK(c.radial_derivs[1][i] <= 2.0 + 1e-9);                      // phi'' <= 2
    CHECK(c.radial_derivs[0][i] - r * c.radial_derivs[1][i] >= -1e-9);
    if (r >= 2.0 * R) {
      CHECK(c.radial_derivs[0][i] == 0.0);
      CHECK(c.radial_derivs[1][i] == 0.0);
      if (phi_at_2R == 0.0) phi_at_2R = c.phi[i];
      CHECK(c.phi[i] == phi_at_2R);  // phi constant beyond 2R
    }
    if (r <= R || r >= 2.0 * R) {
      for (int j = 2; j < 6; ++j) CHECK(c.radial_derivs[j][i] == 0.0);
      CHECK(std::abs(c.delta3_phi[i]) <= 1e-6);
    }
  }
}

TEST_CASE("the in-ball value of Phi_R is the same 16 for every admissible (N, b)") {
  for (int dim : {5, 6, 7, 8, 10, 12}) {
    const double upper = std::min(4.0, 0.5 * dim);
    for (double frac : {0.2, 0.5, 0.8}) {
      const double b = frac * upper;
      GridPtr grid = RadialGrid::create(make_params(dim, b), 20.0, 64);
      const CutoffProfile c = make_cutoff(grid, 6.0);
      for (int i = 0; i < grid->n(); ++i) {
        if (grid->nodes()[i] <= 6.0) CHECK(std::abs(c.big_phi[i] - 16.0) <= 1e-12);
      }
    }
  }
}

TEST_CASE("scaling certificate is R-independent for every order") {
  for (int j = 1; j <= 6; ++j) {
    const std::vector<double> cert = scaling_certificate({5.0, 10.0, 20.0}, j);
    REQUIRE(cert.size() == 3);
    CHECK(cert[0] > 0.0);
    CHECK(cert[1] == doctest::Approx(cert[0]).epsilon(5e-2));
    CHECK(cert[2] == doctest::Approx(cert[0]).epsilon(5e-2));
    CHECK(std::isfinite(cert[0]));
  }
  // the signed sup of phi'' is exactly 2, attained inside the ball
  GridPtr grid = RadialGrid::create(make_params(6, 1.0), 24.0, 512);
  const CutoffProfile c = make_cutoff(grid, 8.0);
  CHECK(c.radial_derivs[1].maxCoeff() == 2.0);
  CHECK_THROWS_AS(scaling_certificate({5.0}, 0), InvalidGridSpec);
  CHECK_THROWS_AS(scaling_certificate({-1.0}, 2), InvalidGridSpec);
}

TEST_CASE("cutoff validation and measured sup constants") {
  GridPtr grid = RadialGrid::create(make_params(6, 1.0), 20.0, 128);
  CHECK_THROWS_AS(make_cutoff(grid, 10.0), CutoffTooLarge);
  CHECK_THROWS_AS(make_cutoff(grid, -1.0), CutoffTooLarge);
  const CutoffProfile c = make_cutoff(grid, 6.0);
  CHECK(c.sup_big_phi_minus_16 > 0.0);
  CHECK(c.sup_delta2_scaled > 0.0);
  CHECK(c.sup_delta3_scaled > 0.0);
  CHECK(std::isfinite(c.sup_hess_delta_scaled));
}
