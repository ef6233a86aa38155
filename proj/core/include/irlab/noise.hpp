#pragma once

#include <cstdint>

#include "irlab/matrix.hpp"

namespace irlab {

// Symmetric Gaussian noise: upper triangle (incl. diagonal) i.i.d.
// N(0, sigma^2), lower triangle mirrored.
struct NoiseModel {
  double sigma = 0.1;
  std::uint64_t seed = 1;
  std::size_t n = 20;
  double delta_prime = 0.05;  // confidence parameter in (0, 1)
  double c_abs = 1.0;         // absolute constant of the concentration bound

  void validate() const;
};

// Deterministic: identical (sigma, seed, n) reproduces a bit-identical E.
// The sample is sigma * G with G drawn from the seed alone, so for a fixed
// seed the matrix scales exactly linearly in sigma.
SymMatrix sample_noise(const NoiseModel& model);

// Concentration envelope C sigma (sqrt(n) + sqrt(ln(4/delta'))); reference
// only — bound evaluations use the measured spectral norm of E.
double e_norm_bound(const NoiseModel& model);

}  // namespace irlab
