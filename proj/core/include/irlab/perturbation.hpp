#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "irlab/dynamics.hpp"
#include "irlab/eigen.hpp"
#include "irlab/matrix.hpp"
#include "irlab/timing.hpp"

namespace irlab {

// A noiseless target, a symmetric perturbation, and both spectra.
struct PerturbedProblem {
  SymMatrix W_hat;
  SymMatrix E;
  SymMatrix W_tilde;            // W_hat + E
  EigenDecomp decomp_hat;
  EigenDecomp decomp_tilde;
  double E_norm = 0.0;          // spectral norm of E
  double M = 0.0;               // max{alpha, ||W_tilde||^{1/N}}

  // |lam_tilde_+^{1/N} - lam_+^{1/N}| for channel i.
  double beta(std::size_t i, std::size_t depth) const;
};

PerturbedProblem make_perturbed(const SymMatrix& W_hat, const SymMatrix& E, double alpha,
                                std::size_t depth);

// (T~0, T~1): the noiseless formulas evaluated on the positive parts of the
// perturbed spectrum.
std::pair<double, double> perturbed_window(const std::vector<double>& spectrum_tilde_plus,
                                           const WindowParams& params);

// Interval-shift bounds on |T~1 - T1| and |T~0 - T0|. Hypotheses:
// lambda_{L+1} - ||E|| > alpha^2 and 0 < (2/3) eta (lambda_{L+1} + ||E||) < 1.
double t1_shift_bound(double lam_next, double E_norm, const WindowParams& params);
double t0_shift_bound(double lam_next, double E_norm, const WindowParams& params);

// Effective-rank stability: full bound
//   2L||E||/lambda_1 + eps r(W~+_L) + (2(L'-L)/c_N)((lam~_{L+1})_+/(lam~_1)_+) eps'
//   + (n-L') 2 alpha^N / (eps' (lam~_1)_+),
// and the simplified 2L||E||/lambda_1 + 3 eps r(W~+_L) variant.
struct EffRankBound {
  double full = 0.0;
  double simplified = 0.0;
  double r_tilde_L = 0.0;       // r(W~+_L)
  std::size_t L_prime = 0;
  bool hypothesis_ok = false;
  std::vector<std::string> violations;
};
EffRankBound effective_rank_stability_bound(const PerturbedProblem& instance,
                                            const WindowParams& params);

// Noiseless effective-rank window bound (N = 2 form):
//   eps r(W_L) + 6(L'-L)(lam_{L+1}/lam_1) eps' + (n-L') 2 alpha^2 / (eps' lam_1).
double effective_rank_window_bound(const std::vector<double>& spectrum, double r_WL,
                                   const WindowParams& params);

// Eigenvalue-recovery error bound for channel i at accuracy eps_tilde:
//   (4 sqrt(2) M^N / delta_s + 1)||E|| + eps_tilde N lam~_i^{1 - 1/N}  (lam~_i > 0)
//   (4 sqrt(2) M^N / delta_s + 1)||E|| + eps_tilde^N                   (lam~_i <= 0).
// Requires ||E|| <= delta_s/2.
double eigen_recovery_bound(const PerturbedProblem& instance, std::size_t i, double eps_tilde,
                            const WindowParams& params);

// Iteration-complexity sandwich for one scalar channel.
struct IterationSandwich {
  double upper = 0.0;                       // T2Id(lam_tilde, eps_tilde) for N = 2
  std::optional<double> lower;              // closed form only on alpha^N >= c_N lam_tilde
  std::optional<long> empirical_T;          // hit |d - lam_+^{1/N}| <= eps_tilde + beta
  std::optional<long> empirical_T_tilde;    // hit |d - lam~_+^{1/N}| <= eps_tilde
  std::optional<long> empirical_T_loose;    // hit tolerance eps_tilde + 2 beta
  double beta = 0.0;
  bool lower_branch_external = false;       // the alpha^N < c_N lam_tilde branch (no closed form)
};
IterationSandwich iteration_sandwich(double lam, double lam_tilde, double eps_tilde,
                                     const WindowParams& params, long max_iters);

// Frobenius approximation error (4 sqrt(2L)/delta_s * lambda_1 + sqrt(L))||E||
// + eps sqrt(L)(lambda_1 + ||E||)/4.
double approx_error_bound(const PerturbedProblem& instance, std::size_t L,
                          const WindowParams& params);

// Limit-error envelope: the stated (1/N)(min{lam~_+, lam_+})^{1/N} ||E|| form
// and the mean-value (1/N) a^{1/N - 1} |lam~_+ - lam_+| form side by side.
struct ConvergenceEnvelope {
  double stated = 0.0;
  double mvt = 0.0;
};
ConvergenceEnvelope convergence_envelope(double lam, double lam_tilde,
                                         const WindowParams& params);

}  // namespace irlab
