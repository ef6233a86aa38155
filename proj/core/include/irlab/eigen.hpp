#pragma once

#include <cstddef>
#include <vector>

#include "irlab/matrix.hpp"

namespace irlab {

using Vector = std::vector<double>;

// Full eigendecomposition of a symmetric matrix: columns of V are
// eigenvectors, lambdas sorted descending, delta_s the minimal pairwise
// eigenvalue gap.
struct EigenDecomp {
  Matrix V;
  std::vector<double> lambdas;
  double delta_s = 0.0;

  std::size_t n() const { return lambdas.size(); }
  Vector eigenvector(std::size_t i) const;
};

// Cyclic Jacobi (row-cyclic sweeps) until the off-diagonal Frobenius mass
// drops below 1e-12 * ||A||_F. Deterministic for fixed input. Columns are
// sign-normalized so the largest-magnitude entry of each eigenvector is
// positive.
EigenDecomp eigendecompose(const SymMatrix& A);

// Spectral norm = max |eigenvalue| (exact for symmetric matrices).
double spectral_norm(const SymMatrix& A);

// Nuclear norm / operator norm; in [1, n]. Throws InputError on the zero
// matrix (undefined rank).
double effective_rank(const SymMatrix& W);
// Same ratio computed directly from a list of eigenvalues.
double effective_rank(const std::vector<double>& lambdas);

// Top-L spectral truncation V_L diag(lambda_1..lambda_L) V_L^T.
SymMatrix best_rank_l(const EigenDecomp& decomp, std::size_t L);

// Weyl inequality check |lam - lam_tilde| <= E_norm.
bool weyl_gap(double lam, double lam_tilde, double E_norm);

// sin of the angle between unit vectors, with v_tilde sign-aligned to v
// (<v, v_tilde> >= 0) first.
double davis_kahan_sin(const Vector& v, const Vector& v_tilde);

// Asserts sin(theta) <= 2 E_norm / delta_s; only meaningful when
// E_norm <= delta_s / 2. Throws DegenerateSpectrumError when delta_s == 0.
bool davis_kahan_check(double sin_theta, double E_norm, double delta_s);

// Chord bound 2*sqrt(2)*E_norm/delta_s on ||v - v_tilde|| (sign-aligned).
// Requires 0 <= E_norm <= delta_s/2; otherwise OutOfRegimeError.
double eigvec_distance_bound(double E_norm, double delta_s);

// ||v - v_tilde|| after sign alignment.
double eigvec_distance(const Vector& v, const Vector& v_tilde);

}  // namespace irlab
