#include "ibnls/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ibnls/errors.hpp"

namespace ibnls {

double ModelParams::b_upper() const { return std::min(4.0, 0.5 * dim); }

ModelParams make_params(int dim, double b) {
  if (dim < 5) {
    throw DimensionTooSmall("spatial dimension must satisfy N >= 5, got N = " + std::to_string(dim));
  }
  const double upper = std::min(4.0, 0.5 * dim);
  if (!(b > 0.0) || !(b < upper)) {
    throw InhomogeneityOutOfRange("inhomogeneity exponent must lie in (0, " + std::to_string(upper) +
                                  "), got b = " + std::to_string(b));
  }
  ModelParams params;
  params.dim = dim;
  params.b = b;
  params.p = 2.0 * (dim - b) / (dim - 4);
  params.alpha = params.p - 2.0;  // equals (8-2b)/(N-4); kept exact against p
  params.q = params.alpha + 1.0;
  return params;
}

BThresholdInfo threshold_16_over_n(const ModelParams& params) {
  BThresholdInfo info;
  info.threshold = 16.0 / params.dim;
  info.reachable = info.threshold < params.b_upper();
  return info;
}

double unit_sphere_area(int dim) {
  return 2.0 * std::pow(M_PI, 0.5 * dim) / std::tgamma(0.5 * dim);
}

}  // namespace ibnls
