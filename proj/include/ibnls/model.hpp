#pragma once

namespace ibnls {

// Parameters of  i u_t + \Delta^2 u = |x|^{-b} |u|^{alpha} u  on R^N in the
// energy-critical regime, together with the exponents derived from (N, b).
// Immutable after construction; shared freely across threads.
struct ModelParams {
  int dim = 0;         // spatial dimension N >= 5
  double b = 0.0;      // inhomogeneity exponent, 0 < b < min(4, N/2)
  double p = 0.0;      // total nonlinearity power 2(N-b)/(N-4)
  double alpha = 0.0;  // multiplicative power (8-2b)/(N-4), alpha = p - 2
  double q = 0.0;      // homogeneity degree of the nonlinear map, alpha + 1

  // Critical Sobolev exponent bookkeeping used all over: the upper end of the
  // admissible b interval.
  double b_upper() const;
};

// Validates (N, b) against the admissible ranges and fills in the derived
// exponents. Throws DimensionTooSmall for N < 5 and InhomogeneityOutOfRange
// for b outside (0, min(4, N/2)).
ModelParams make_params(int dim, double b);

struct BThresholdInfo {
  double threshold = 0.0;  // 16/N
  bool reachable = false;  // does [16/N, min(4, N/2)) intersect the admissible b range
};

// The b >= 16/N regime gate of the non-radial finite-time statement.
BThresholdInfo threshold_16_over_n(const ModelParams& params);

// Surface measure of the unit sphere S^{N-1}: 2 pi^{N/2} / Gamma(N/2).
double unit_sphere_area(int dim);

}  // namespace ibnls
