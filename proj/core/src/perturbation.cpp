#include "irlab/perturbation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "irlab/errors.hpp"

namespace irlab {

namespace {

double positive_part(double x) { return std::max(x, 0.0); }

double nth_root_plus(double lam, std::size_t depth) {
  return std::pow(positive_part(lam), 1.0 / static_cast<double>(depth));
}

}  // namespace

double PerturbedProblem::beta(std::size_t i, std::size_t depth) const {
  return std::abs(nth_root_plus(decomp_tilde.lambdas[i], depth) -
                  nth_root_plus(decomp_hat.lambdas[i], depth));
}

PerturbedProblem make_perturbed(const SymMatrix& W_hat, const SymMatrix& E, double alpha,
                                std::size_t depth) {
  if (W_hat.n() != E.n()) throw InputError("make_perturbed: dimension mismatch");
  PerturbedProblem p;
  p.W_hat = W_hat;
  p.E = E;
  p.W_tilde = W_hat + E;
  p.decomp_hat = eigendecompose(W_hat);
  p.decomp_tilde = eigendecompose(p.W_tilde);
  p.E_norm = spectral_norm(E);
  double w_norm = 0.0;
  for (double l : p.decomp_tilde.lambdas) w_norm = std::max(w_norm, std::abs(l));
  p.M = std::max(alpha, std::pow(w_norm, 1.0 / static_cast<double>(depth)));
  return p;
}

std::pair<double, double> perturbed_window(const std::vector<double>& spectrum_tilde_plus,
                                           const WindowParams& params) {
  const std::size_t L = params.L;
  if (spectrum_tilde_plus.size() < L + 1)
    throw InputError("perturbed_window: spectrum must provide lambda~_1..lambda~_{L+1}");
  const double aN = std::pow(params.alpha, static_cast<double>(params.depth));
  if (!(spectrum_tilde_plus[L - 1] > 0.0))
    throw OutOfRegimeError("perturbed_window: (lambda~_L)_+ must be positive");
  if (!(aN < params.eps_prime * spectrum_tilde_plus[L - 1]))
    throw OutOfRegimeError("perturbed_window: alpha^N < eps' (lambda~_L)_+ violated");
  std::vector<double> leading(spectrum_tilde_plus.begin(),
                              spectrum_tilde_plus.begin() + static_cast<long>(L));
  return {t0(leading, params), t1(spectrum_tilde_plus[L], params)};
}

namespace {

void check_shift_hypotheses(double lam_next, double E_norm, const WindowParams& params) {
  if (E_norm < 0.0) throw InputError("shift bound: negative E_norm");
  const double a2 = params.alpha * params.alpha;
  if (!(lam_next - E_norm > a2))
    throw OutOfRegimeError("shift bound: lambda_{L+1} - ||E|| > alpha^2 violated");
  const double u = (2.0 / 3.0) * params.eta * (lam_next + E_norm);
  if (!(u > 0.0 && u < 1.0))
    throw OutOfRegimeError("shift bound: 0 < (2/3) eta (lambda_{L+1} + ||E||) < 1 violated");
}

}  // namespace

double t1_shift_bound(double lam_next, double E_norm, const WindowParams& params) {
  check_shift_hypotheses(lam_next, E_norm, params);
  if (E_norm == 0.0) return 0.0;
  const double a2 = params.alpha * params.alpha;
  const double H = std::log(lam_next / a2 - 1.0);
  const double C_eps = std::log(1.0 / params.eps_prime - 1.0);
  return E_norm / (2.0 * params.eta * (lam_next - E_norm)) *
         (1.0 / (lam_next - E_norm - a2) + std::abs(H - C_eps) / lam_next);
}

double t0_shift_bound(double lam_next, double E_norm, const WindowParams& params) {
  check_shift_hypotheses(lam_next, E_norm, params);
  const double a2 = params.alpha * params.alpha;
  const double H = std::log(lam_next / a2 - 1.0);
  const double C2 = std::log(2.0);
  const double K = k_epsilon(params.eps);
  const double termA = E_norm / (2.0 * params.eta * (lam_next - E_norm)) *
                       (1.0 / (lam_next - E_norm - a2) + std::abs(H - C2) / lam_next);
  const double termB = E_norm / (std::sqrt(3.0) * params.alpha) /
                       (std::sqrt(lam_next - E_norm) + std::sqrt(lam_next));
  const double termC = 9.0 * K * E_norm /
                       (2.0 * params.eta * lam_next * (lam_next - E_norm) *
                        std::abs(3.0 - 2.0 * params.eta * (lam_next + E_norm)));
  return termA + termB + termC + 1.0;
}

EffRankBound effective_rank_stability_bound(const PerturbedProblem& instance,
                                            const WindowParams& params) {
  const std::size_t n = instance.W_hat.n();
  const std::size_t L = params.L;
  if (L >= n) throw InputError("effective_rank_stability_bound: L must be < n");
  EffRankBound b;

  const std::vector<double>& lt = instance.decomp_tilde.lambdas;
  const double lam1_hat = instance.decomp_hat.lambdas[0];
  const double aN = std::pow(params.alpha, static_cast<double>(params.depth));
  const double cN = params.c_n();

  for (std::size_t ell = 0; ell < n; ++ell)
    if (params.eps_prime * positive_part(lt[ell]) > aN) b.L_prime = ell + 1;

  // r(W~+_L): effective rank of the best rank-L approximation of W~+.
  std::vector<double> topL;
  for (std::size_t i = 0; i < L; ++i) topL.push_back(positive_part(lt[i]));
  b.r_tilde_L = effective_rank(topL);

  b.hypothesis_ok = true;
  if (!(positive_part(lt[L - 1]) > 0.0)) {
    b.hypothesis_ok = false;
    b.violations.push_back("(lambda~_L)_+ > 0 violated");
  }
  if (!(aN < params.eps_prime * positive_part(lt[L - 1]))) {
    b.hypothesis_ok = false;
    b.violations.push_back("alpha^N < eps' (lambda~_L)_+ violated");
  }
  const double N = static_cast<double>(params.depth);
  const double eta_cap =
      1.0 / ((3.0 * N - 2.0) *
             std::max(std::pow(params.alpha, N - 2.0),
                      std::pow(positive_part(lt[0]), 2.0 - 2.0 / N)));
  if (!(params.eta < eta_cap)) {
    b.hypothesis_ok = false;
    b.violations.push_back("step-size hypothesis violated");
  }

  const double lamt1_plus = positive_part(lt[0]);
  const double lamtL1_plus = positive_part(lt[L]);
  const double Lp = static_cast<double>(b.L_prime);
  b.full = 2.0 * static_cast<double>(L) * instance.E_norm / lam1_hat +
           params.eps * b.r_tilde_L +
           (2.0 * (Lp - static_cast<double>(L)) / cN) * (lamtL1_plus / lamt1_plus) *
               params.eps_prime +
           (static_cast<double>(n) - Lp) * 2.0 * aN / (params.eps_prime * lamt1_plus);
  b.simplified = 2.0 * static_cast<double>(L) * instance.E_norm / lam1_hat +
                 3.0 * params.eps * b.r_tilde_L;
  return b;
}

double effective_rank_window_bound(const std::vector<double>& spectrum, double r_WL,
                                   const WindowParams& params) {
  const std::size_t n = spectrum.size();
  const std::size_t L = params.L;
  if (L >= n) throw InputError("effective_rank_window_bound: L must be < n");
  const double a2 = params.alpha * params.alpha;
  std::size_t L_prime = 0;
  for (std::size_t ell = 0; ell < n; ++ell)
    if (params.eps_prime * spectrum[ell] > a2) L_prime = ell + 1;
  const double Lp = static_cast<double>(L_prime);
  return params.eps * r_WL +
         6.0 * (Lp - static_cast<double>(L)) * (spectrum[L] / spectrum[0]) * params.eps_prime +
         (static_cast<double>(n) - Lp) * 2.0 * a2 / (params.eps_prime * spectrum[0]);
}

double eigen_recovery_bound(const PerturbedProblem& instance, std::size_t i, double eps_tilde,
                            const WindowParams& params) {
  const double delta_s = instance.decomp_hat.delta_s;
  if (!(delta_s > 0.0)) throw DegenerateSpectrumError("eigen_recovery_bound: zero spectral gap");
  if (instance.E_norm > delta_s / 2.0)
    throw OutOfRegimeError("eigen_recovery_bound: ||E|| > delta_s/2 violates the hypothesis");
  if (!(eps_tilde > 0.0)) throw InputError("eigen_recovery_bound: eps~ must be positive");
  const double N = static_cast<double>(params.depth);
  const double MN = std::pow(instance.M, N);
  const double base = (4.0 * std::sqrt(2.0) * MN / delta_s + 1.0) * instance.E_norm;
  const double lam_t = instance.decomp_tilde.lambdas[i];
  if (lam_t > 0.0) return base + eps_tilde * N * std::pow(lam_t, 1.0 - 1.0 / N);
  return base + std::pow(eps_tilde, N);
}

IterationSandwich iteration_sandwich(double lam, double lam_tilde, double eps_tilde,
                                     const WindowParams& params, long max_iters) {
  const double N = static_cast<double>(params.depth);
  const double cN = params.c_n();
  const double aN = std::pow(params.alpha, N);
  const double limit_tilde = nth_root_plus(lam_tilde, params.depth);
  const double limit_hat = nth_root_plus(lam, params.depth);
  if (!(eps_tilde > 0.0 && eps_tilde < std::abs(params.alpha - limit_tilde)))
    throw OutOfRegimeError("iteration_sandwich: eps~ outside (0, |alpha - lam~_+^{1/N}|)");

  DynamicsConfig cfg;
  cfg.depth = params.depth;
  cfg.eta = params.eta;
  cfg.alpha = params.alpha;
  cfg.max_iters = max_iters;
  const StepSizeBounds ssb = step_size_bounds(lam_tilde, cfg);
  if (!(params.eta < ssb.complexity))
    throw OutOfRegimeError("iteration_sandwich: eta violates the complexity step-size bound");

  IterationSandwich s;
  s.beta = std::abs(limit_tilde - limit_hat);

  if (params.depth == 2) {
    s.upper = t2id(lam_tilde, eps_tilde, params);
  } else {
    throw OutOfRegimeError("iteration_sandwich: closed-form T2Id requires N = 2");
  }

  if (lam_tilde > aN) {
    if (aN >= cN * lam_tilde) {
      const double denom = std::abs(std::log(
          1.0 - params.eta * N * std::pow(cN * lam_tilde, 2.0 - 2.0 / N)));
      s.lower = std::log((std::pow(lam_tilde, 1.0 / N) - params.alpha) /
                         (eps_tilde + 2.0 * s.beta)) /
                denom;
    } else {
      // Needs the external T_N^+ closed form; reported as unavailable.
      s.lower_branch_external = true;
    }
  }

  const std::vector<TrajectoryRecord> traj = scalar_simulate(lam_tilde, cfg);
  s.empirical_T_tilde = hitting_time(traj, limit_tilde, eps_tilde);
  s.empirical_T = hitting_time(traj, limit_hat, eps_tilde + s.beta);
  s.empirical_T_loose = hitting_time(traj, limit_tilde, eps_tilde + 2.0 * s.beta);
  return s;
}

double approx_error_bound(const PerturbedProblem& instance, std::size_t L,
                          const WindowParams& params) {
  const double delta_s = instance.decomp_hat.delta_s;
  if (!(delta_s > 0.0)) throw DegenerateSpectrumError("approx_error_bound: zero spectral gap");
  const double lam1 = instance.decomp_hat.lambdas[0];
  const double rootL = std::sqrt(static_cast<double>(L));
  return (4.0 * std::sqrt(2.0 * static_cast<double>(L)) / delta_s * lam1 + rootL) *
             instance.E_norm +
         params.eps * rootL * (lam1 + instance.E_norm) / 4.0;
}

ConvergenceEnvelope convergence_envelope(double lam, double lam_tilde,
                                         const WindowParams& params) {
  if (params.depth < 2) throw InputError("convergence_envelope: requires N >= 2");
  const double N = static_cast<double>(params.depth);
  const double lp = positive_part(lam);
  const double ltp = positive_part(lam_tilde);
  const double diff = std::abs(ltp - lp);  // <= ||E|| by Weyl
  ConvergenceEnvelope env;
  env.stated = (1.0 / N) * std::pow(std::min(ltp, lp), 1.0 / N) * diff;
  const double a = std::min(ltp, lp);
  env.mvt = a > 0.0 ? (1.0 / N) * std::pow(a, 1.0 / N - 1.0) * diff
                    : std::pow(diff, 1.0 / N);
  return env;
}

}  // namespace irlab
