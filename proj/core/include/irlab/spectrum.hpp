#pragma once

#include <cstdint>
#include <vector>

#include "irlab/eigen.hpp"
#include "irlab/matrix.hpp"

namespace irlab {

// Recipe for a synthetic symmetric target: prescribed leading eigenvalues
// plus a fill rule for the remaining n - |leading| ones, rotated into a
// seeded random orthogonal basis.
struct SpectrumSpec {
  enum class TailFill { constant, log_spaced };

  std::vector<double> leading;  // strictly descending, positive
  TailFill tail_fill = TailFill::constant;
  double tail_value = 0.01;     // constant fill
  double tail_hi = 0.01;        // log-spaced fill range (descending hi -> lo)
  double tail_lo = 1e-4;
  std::size_t n = 20;
  std::uint64_t basis_seed = 1;

  // The full descending eigenvalue list (leading + synthesized tail).
  std::vector<double> full_spectrum() const;
};

// Random orthogonal matrix: modified Gram-Schmidt on a seeded Gaussian
// matrix, determinant sign normalized to +1.
Matrix random_orthogonal(std::size_t n, std::uint64_t seed);

// Synthesized target W = V diag(lambda) V^T with its generating basis and
// spectrum.
struct SynthesizedTarget {
  SymMatrix W;
  Matrix V;
  std::vector<double> lambdas;
  double delta_s = 0.0;
};

SynthesizedTarget synthesize(const SpectrumSpec& spec);

}  // namespace irlab
