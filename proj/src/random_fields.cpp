#include "ibnls/random_fields.hpp"

#include <cmath>

namespace ibnls {

SmoothFieldSampler::SmoothFieldSampler(GridPtr grid, std::uint64_t seed) : grid_(std::move(grid)), rng_(seed) {}

RadialField SmoothFieldSampler::real_field() {
  const int n = grid_->n();
  const double max_width = grid_->r_max() / 8.0;
  std::uniform_int_distribution<int> bump_count(2, 5);
  std::uniform_real_distribution<double> width_dist(0.5, max_width);
  std::uniform_real_distribution<double> amp_dist(-1.5, 1.5);
  std::uniform_int_distribution<int> mod_dist(0, 1);

  Eigen::VectorXcd values = Eigen::VectorXcd::Zero(n);
  const int bumps = bump_count(rng_);
  for (int k = 0; k < bumps; ++k) {
    const double w = width_dist(rng_);
    double a = amp_dist(rng_);
    if (std::abs(a) < 0.1) a = std::copysign(0.1, a == 0.0 ? 1.0 : a);
    const int mod = mod_dist(rng_);
    for (int i = 0; i < n; ++i) {
      const double r = grid_->nodes()[i];
      const double shape = mod == 0 ? 1.0 : (r / w) * (r / w);
      values[i] += a * shape * std::exp(-(r / w) * (r / w));
    }
  }
  if (values.cwiseAbs().maxCoeff() < 1e-10) values[n / 8] = Complex(1.0, 0.0);
  return grid_->make_field(values);
}

RadialField SmoothFieldSampler::complex_field() {
  RadialField f = real_field();
  std::uniform_real_distribution<double> chirp_dist(-1.0, 1.0);
  const double chirp = chirp_dist(rng_);
  for (int i = 0; i < grid_->n(); ++i) {
    const double r = grid_->nodes()[i];
    const double phase = chirp * r * r;
    f.values[i] *= Complex(std::cos(phase), std::sin(phase));
  }
  return f;
}

}  // namespace ibnls
