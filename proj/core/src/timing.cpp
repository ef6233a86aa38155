#include "irlab/timing.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "irlab/errors.hpp"

namespace irlab {

namespace {

const double kOneMinusInvSqrt3 = 1.0 - std::sqrt(1.0 / 3.0);

std::string fmt(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

}  // namespace

void WindowParams::validate() const {
  if (L < 1) throw InputError("WindowParams: L must be >= 1");
  if (!(eps > 0.0 && eps < 1.0)) throw InputError("WindowParams: eps must lie in (0, 1)");
  if (!(eps_prime > 0.0 && eps_prime < c_n()))
    throw InputError("WindowParams: eps' must lie in (0, c_N)");
  if (!(alpha > 0.0)) throw InputError("WindowParams: alpha must be positive");
  if (!(eta > 0.0)) throw InputError("WindowParams: eta must be positive");
  if (depth < 2) throw InputError("WindowParams: depth must be >= 2");
}

double k_epsilon(double eps) {
  if (!(eps > 0.0 && eps < 8.0 * kOneMinusInvSqrt3))
    throw OutOfRegimeError("k_epsilon: eps outside (0, 8(1 - 1/sqrt(3))) makes K <= 0");
  return std::log(8.0 / eps) - std::abs(std::log(kOneMinusInvSqrt3));
}

double t2id(double lam, double eps, const WindowParams& params) {
  if (params.depth != 2) throw OutOfRegimeError("t2id: closed form requires N = 2");
  const double a2 = params.alpha * params.alpha;
  if (!(lam > a2)) throw OutOfRegimeError("t2id: requires lam > alpha^2 (got lam = " + fmt(lam) + ")");
  const double u = (2.0 / 3.0) * params.eta * lam;
  if (!(u > 0.0 && u < 1.0))
    throw OutOfRegimeError("t2id: requires 0 < (2/3) eta lam < 1 (got " + fmt(u) + ")");
  if (!(eps > 0.0)) throw InputError("t2id: eps must be positive");

  const double term1 = (std::log(lam / a2 - 1.0) - std::log(2.0)) / (2.0 * params.eta * lam);
  const double term2 = std::ceil(std::sqrt(lam / 3.0) / params.alpha);
  const double term3 = (std::log(std::sqrt(lam) / eps) - std::abs(std::log(kOneMinusInvSqrt3))) /
                       std::abs(std::log(1.0 - u));
  return term1 + term2 + term3;
}

double t0(const std::vector<double>& leading, const WindowParams& params) {
  if (leading.empty()) throw InputError("t0: empty spectrum");
  const double a2 = params.alpha * params.alpha;
  for (std::size_t i = 0; i < leading.size(); ++i) {
    if (!(leading[i] > a2)) throw OutOfRegimeError("t0: every leading eigenvalue must exceed alpha^2");
    if (i > 0 && leading[i] >= leading[i - 1])
      throw InputError("t0: leading eigenvalues must be strictly descending");
  }
  double best = t2id(leading.front(), leading.front() / 2.0, params);
  for (double lam : leading)
    best = std::max(best, t2id(lam, std::sqrt(lam) * params.eps / 8.0, params));
  return best;
}

double t1(double lam_next, const WindowParams& params) {
  const double a2 = params.alpha * params.alpha;
  if (!(lam_next > a2)) throw OutOfRegimeError("t1: requires lambda_{L+1} > alpha^2");
  return (std::log(lam_next / a2 - 1.0) - std::log(1.0 / params.eps_prime - 1.0)) /
         (2.0 * params.eta * lam_next);
}

TimingBreakdown decompose_T(double x, const WindowParams& params) {
  const double a2 = params.alpha * params.alpha;
  const double lo = a2 / params.eps_prime;
  const double hi = 1.0 / (4.0 * params.eta);
  TimingBreakdown b;
  b.domain_ok = x >= lo && x <= hi;
  if (!b.domain_ok)
    throw OutOfRegimeError("decompose_T: x outside D = [alpha^2/eps', 1/(4 eta)]");
  const double K = k_epsilon(params.eps);
  b.A = (std::log(x / a2 - 1.0) - std::log(2.0)) / (2.0 * params.eta * x);
  b.B = std::ceil(std::sqrt(x / 3.0) / params.alpha);
  b.level = static_cast<long>(b.B);
  b.C = K / std::abs(std::log(1.0 - (2.0 / 3.0) * params.eta * x));
  b.T_value = b.A + b.B + b.C;
  return b;
}

double kappa(double lam_hi, double lam_lo, const WindowParams& params) {
  const double u_lo = (2.0 / 3.0) * params.eta * lam_lo;
  const double u_hi = (2.0 / 3.0) * params.eta * lam_hi;
  if (!(u_lo > 0.0 && u_lo < 1.0 && u_hi > 0.0 && u_hi < 1.0))
    throw OutOfRegimeError("kappa: requires 0 < (2/3) eta lam < 1 for both eigenvalues");
  const double K = k_epsilon(params.eps);
  const double lg = std::log(1.0 - u_hi);
  return 2.0 * params.eta * K / (3.0 * (1.0 - u_lo) * lg * lg);
}

std::vector<GapCheck> check_gap_condition(const std::vector<double>& spectrum,
                                          const WindowParams& params) {
  std::vector<GapCheck> checks;
  for (std::size_t ell = 0; ell + 1 < spectrum.size(); ++ell) {
    GapCheck c;
    c.ell = ell + 1;
    const double hi = spectrum[ell], lo = spectrum[ell + 1];
    c.actual_gap = hi - lo;
    const long z_hi = static_cast<long>(std::ceil(std::sqrt(hi / 3.0) / params.alpha));
    const long z_lo = static_cast<long>(std::ceil(std::sqrt(lo / 3.0) / params.alpha));
    c.level_difference = z_hi - z_lo;
    c.required_gap = static_cast<double>(c.level_difference) / kappa(hi, lo, params);
    c.pass = c.actual_gap >= c.required_gap;
    checks.push_back(c);
  }
  return checks;
}

double alpha_star(double lam_L, double lam_next, const WindowParams& params) {
  if (!(lam_L > lam_next)) throw DegenerateSpectrumError("alpha_star: requires lambda_L > lambda_{L+1}");
  if (!(lam_next > 0.0)) throw InputError("alpha_star: lambda_{L+1} must be positive");
  const double K = k_epsilon(params.eps);
  const double num = lam_L * std::log(params.eps_prime * lam_next) -
                     lam_next * (std::log(lam_L) - std::log(2.0) - 3.0 * K);
  return std::exp(num / (2.0 * (lam_L - lam_next)));
}

double eta_star(double lam_L, double lam_next, const WindowParams& params) {
  const double a2 = params.alpha * params.alpha;
  if (!(lam_L > lam_next) || !(lam_next > 0.0))
    throw DegenerateSpectrumError("eta_star: requires lambda_L > lambda_{L+1} > 0");
  if (!(lam_next > a2)) throw OutOfRegimeError("eta_star: requires lambda_{L+1} > alpha^2");
  const double K = k_epsilon(params.eps);
  const double g1 =
      (std::log(lam_next / a2 - 1.0) - std::log(1.0 / params.eps_prime - 1.0)) / lam_next -
      (std::log(lam_L / a2 - 1.0) - std::log(2.0) - 3.0 * K) / lam_L;
  const double g0 = std::ceil(std::sqrt(lam_L / 3.0) / params.alpha);
  if (!(g1 > 0.0))
    throw OutOfRegimeError("eta_star: numerator g1 <= 0, no step size can certify the window");
  return g1 / (2.0 * g0);
}

double phi(double t) {
  if (!(t > 0.0)) throw InputError("phi: t must be positive");
  return std::log(t / 2.0) - 1.0 / t - 1.0;
}

double phi_root() {
  double lo = 1e-12, hi = 2.0 * std::exp(1.0) + 1.0;
  // phi(lo) < 0, phi(hi) > 0.
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    (phi(mid) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

WindowVerdict window_verdict(const std::vector<double>& spectrum, const WindowParams& params) {
  params.validate();
  const std::size_t L = params.L;
  if (spectrum.size() < L + 1)
    throw InputError("window_verdict: spectrum must provide lambda_1..lambda_{L+1}");

  WindowVerdict v;
  const double aN = std::pow(params.alpha, static_cast<double>(params.depth));
  for (std::size_t ell = 0; ell < spectrum.size(); ++ell) {
    if (params.eps_prime * spectrum[ell] > aN) v.L_prime = ell + 1;
    if (spectrum[ell] > aN) v.L_dprime = ell + 1;
  }

  const double lam_L = spectrum[L - 1];
  const double lam_next = spectrum[L];

  // Theorem hypotheses, reported rather than silently ignored.
  if (!(aN < params.eps_prime * lam_next))
    v.failure_reasons.push_back("alpha^N < eps' lambda_{L+1} violated");
  if (!(spectrum.front() >= 1.0)) v.failure_reasons.push_back("lambda_1 >= 1 violated");
  const double e = std::exp(1.0);
  if (!(lam_L >= 2.0 * (e + 1.0) * params.alpha * params.alpha))
    v.failure_reasons.push_back("lambda_L >= 2(e+1) alpha^2 violated");

  bool gaps_ok = true;
  // Pairs (lambda_ell, lambda_{ell+1}) for ell = 1..L.
  const std::vector<double> head(spectrum.begin(), spectrum.begin() + static_cast<long>(L + 1));
  try {
    v.gap_checks = check_gap_condition(head, params);
    for (const GapCheck& c : v.gap_checks) {
      if (!c.pass) {
        gaps_ok = false;
        std::ostringstream os;
        os << "gap condition failed for pair " << c.ell << ": gap " << c.actual_gap
           << " < required " << c.required_gap;
        v.failure_reasons.push_back(os.str());
      }
    }
  } catch (const OutOfRegimeError& ex) {
    gaps_ok = false;
    v.failure_reasons.push_back(std::string("gap condition not evaluable: ") + ex.what());
  }

  try {
    v.alpha_star = alpha_star(lam_L, lam_next, params);
    if (!(params.alpha < v.alpha_star)) v.failure_reasons.push_back("alpha < alpha* violated");
  } catch (const Error& ex) {
    v.failure_reasons.push_back(std::string("alpha* not evaluable: ") + ex.what());
  }
  try {
    v.eta_star = eta_star(lam_L, lam_next, params);
    if (!(params.eta < v.eta_star)) v.failure_reasons.push_back("eta < eta* violated");
  } catch (const OutOfRegimeError& ex) {
    v.eta_star = 0.0;
    v.failure_reasons.push_back(std::string("eta* not evaluable: ") + ex.what());
  }

  std::vector<double> leading(spectrum.begin(), spectrum.begin() + static_cast<long>(L));
  if (gaps_ok) {
    v.explicit_form = true;
    v.T0 = t2id(lam_L, std::sqrt(lam_L) * params.eps / 8.0, params);
    // The explicit form still sits under the full max; keep the conservative
    // value if the lambda_1/2 candidate dominates.
    v.T0 = std::max(v.T0, t0(leading, params));
  } else {
    v.explicit_form = false;
    v.T0 = t0(leading, params);
  }
  v.T1 = t1(lam_next, params);
  v.nonempty = v.T0 < v.T1;
  if (!v.nonempty) v.failure_reasons.push_back("T0 >= T1: window empty by direct comparison");
  return v;
}

}  // namespace irlab
