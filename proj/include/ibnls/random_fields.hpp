#pragma once

#include <cstdint>
#include <random>

#include "ibnls/radial_grid.hpp"

namespace ibnls {

// Seeded generator of smooth decaying radial fields: random sums of a few
// Gaussian bumps (optionally r^2-modulated), with widths well inside the
// truncation radius. Used by the verification suites and ensemble tests.
class SmoothFieldSampler {
public:
  SmoothFieldSampler(GridPtr grid, std::uint64_t seed);

  // Real-valued random field, guaranteed nonzero.
  RadialField real_field();
  // Same with a random quadratic chirp phase.
  RadialField complex_field();

private:
  GridPtr grid_;
  std::mt19937_64 rng_;
};

}  // namespace ibnls
