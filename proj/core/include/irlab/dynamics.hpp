#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "irlab/matrix.hpp"

namespace irlab {

struct DynamicsConfig {
  std::size_t depth = 2;        // N
  double eta = 0.005;
  double alpha = 0.01;
  long max_iters = 100000;
  long record_every = 1;

  void validate() const;        // throws InputError on violated invariants
};

// The N factor matrices W_1..W_N; product() is W_N * ... * W_1.
struct FactorChain {
  std::vector<Matrix> factors;

  static FactorChain identical_init(std::size_t depth, std::size_t n, double alpha);
  Matrix product() const;
  // Max entrywise difference between any two factors (identical-factor
  // invariant under identical initialization with a symmetric target).
  double factor_spread() const;
};

struct TrajectoryRecord {
  long k = 0;
  std::vector<double> diag;     // d_i(k) in the target's eigenbasis
  double loss = 0.0;            // (1/2) ||W(k) - target||_F^2
  double eff_rank = 0.0;
};

// Loss (1/2)||W_N...W_1 - target||_F^2 and its per-factor gradients.
double chain_loss(const FactorChain& chain, const SymMatrix& target);
std::vector<Matrix> chain_gradient(const FactorChain& chain, const SymMatrix& target);

// One gradient step on every factor; throws DivergenceError (with iteration
// context left to the caller) on non-finite intermediates.
FactorChain factor_gd_step(const FactorChain& chain, const SymMatrix& target,
                           const DynamicsConfig& cfg);

// Full-matrix simulation against a symmetric target. `basis` is the target's
// eigenvector matrix used to read off the diagonal channel values; records at
// cfg.record_every stride (iteration 0 always recorded). Never stops early.
std::vector<TrajectoryRecord> simulate_factors(const SymMatrix& target, const Matrix& basis,
                                               const DynamicsConfig& cfg);

// Scalar channel d(k+1) = d - eta d^{N-1} (d^N - lam_tilde).
double scalar_step(double d, double lam_tilde, const DynamicsConfig& cfg);

// Iterates the scalar channel from d(0) = alpha; stops early once
// |d^N - lam_tilde| <= 1e-14 or after max_iters. DivergenceError when
// |d| > 1e12, carrying the iteration index.
std::vector<TrajectoryRecord> scalar_simulate(double lam_tilde, const DynamicsConfig& cfg);

// Predicted limit (lam_tilde)_+^{1/N} for N >= 2; OutOfRegimeError when eta
// exceeds the convergence threshold.
double scalar_limit(double lam_tilde, const DynamicsConfig& cfg);

// Admissible step-size thresholds: the three-case convergence bound and the
// stricter complexity-theorem bound with M = max{alpha, |lam_tilde|^{1/N}}.
struct StepSizeBounds {
  double convergence = 0.0;
  double complexity = 0.0;
};
StepSizeBounds step_size_bounds(double lam_tilde, const DynamicsConfig& cfg);

// Smallest recorded k with |d(k) - target_value| <= tol, or nullopt.
std::optional<long> hitting_time(const std::vector<TrajectoryRecord>& trajectory,
                                 double target_value, double tol);
// Same, reading channel `i` of a full-matrix trajectory.
std::optional<long> hitting_time(const std::vector<TrajectoryRecord>& trajectory, std::size_t i,
                                 double target_value, double tol);

}  // namespace irlab
