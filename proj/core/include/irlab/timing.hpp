#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace irlab {

// Parameters of the low-rank observation window [T0, T1].
struct WindowParams {
  std::size_t L = 1;
  double eps = 0.05;        // epsilon in (0, 1)
  double eps_prime = 0.1;   // epsilon' in (0, c_N)
  double alpha = 0.01;
  double eta = 0.005;
  std::size_t depth = 2;    // N

  double c_n() const {
    return (static_cast<double>(depth) - 1.0) / (2.0 * static_cast<double>(depth) - 1.0);
  }
  void validate() const;    // throws InputError on violated invariants
};

// A(x) + B(x) + C(x) decomposition of T(x) = T2Id(x, sqrt(x) eps / 8).
struct TimingBreakdown {
  double A = 0.0;
  double B = 0.0;           // the ceiling term (positive integer value)
  double C = 0.0;
  double T_value = 0.0;
  long level = 0;           // z with x in I_z
  bool domain_ok = false;   // x in D = [alpha^2/eps', 1/(4 eta)]
};

struct GapCheck {
  std::size_t ell = 0;      // pair (lambda_ell, lambda_{ell+1})
  double actual_gap = 0.0;
  double required_gap = 0.0;
  long level_difference = 0;
  bool pass = false;
};

struct WindowVerdict {
  double T0 = 0.0;
  double T1 = 0.0;
  bool nonempty = false;
  bool explicit_form = false;  // T0 given by the lambda_L formula
  std::vector<GapCheck> gap_checks;
  double alpha_star = 0.0;
  double eta_star = 0.0;
  std::size_t L_prime = 0;     // max{l : eps' lambda_l > alpha^N}
  std::size_t L_dprime = 0;    // max{l : lambda_l > alpha^N}
  std::vector<std::string> failure_reasons;
};

// K_eps = ln(8/eps) - |ln(1 - sqrt(1/3))|; positive iff eps < 8(1 - 1/sqrt(3)).
double k_epsilon(double eps);

// Three-term T2Id formula (N = 2, lam >= alpha^2 regime).
double t2id(double lam, double eps, const WindowParams& params);

// T0 = max{ T2Id(lam_1, lam_1/2), max_l T2Id(lam_l, sqrt(lam_l) eps / 8) }.
double t0(const std::vector<double>& leading, const WindowParams& params);

// T1 = (1 / (2 eta lam)) [ln(lam/alpha^2 - 1) - ln(1/eps' - 1)].
double t1(double lam_next, const WindowParams& params);

TimingBreakdown decompose_T(double x, const WindowParams& params);

// kappa(lam_lo, lam_hi) = 2 eta K_eps / (3 (1 - (2/3) eta lam_lo) (ln(1 - (2/3) eta lam_hi))^2).
double kappa(double lam_hi, double lam_lo, const WindowParams& params);

// Per-adjacent-pair gap condition; failures are data, not errors.
std::vector<GapCheck> check_gap_condition(const std::vector<double>& spectrum,
                                          const WindowParams& params);

double alpha_star(double lam_L, double lam_next, const WindowParams& params);
double eta_star(double lam_L, double lam_next, const WindowParams& params);

// Full verdict: gap checks, alpha*/eta*, T0 (explicit lambda_L form when the
// gap checks pass, conservative max otherwise), T1, and failure reasons.
WindowVerdict window_verdict(const std::vector<double>& spectrum, const WindowParams& params);

// phi(t) = ln(t/2) - 1/t - 1 and its unique positive root (bisection on
// (0, 2e+1], tolerance 1e-12).
double phi(double t);
double phi_root();

}  // namespace irlab
