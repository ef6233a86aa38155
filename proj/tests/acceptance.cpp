// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit when any
// criterion fails. Tolerances are pinned in code next to each check.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "irlab/csv.hpp"
#include "irlab/dynamics.hpp"
#include "irlab/eigen.hpp"
#include "irlab/errors.hpp"
#include "irlab/experiments.hpp"
#include "irlab/matrix.hpp"
#include "irlab/noise.hpp"
#include "irlab/perturbation.hpp"
#include "irlab/rng.hpp"
#include "irlab/spectrum.hpp"
#include "irlab/timing.hpp"

using namespace irlab;
namespace fs = std::filesystem;

namespace {

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
};

int g_failures = 0;

void verdict(int idx, const char* name, bool pass) {
  std::printf("criterion %d [%s]: %s\n", idx, name, pass ? "PASS" : "FAIL");
  if (!pass) ++g_failures;
}

bool sub(bool ok, const char* fmt, ...) {
  std::printf("  %-4s ", ok ? "ok" : "FAIL");
  va_list args;
  va_start(args, fmt);
  std::vprintf(fmt, args);
  va_end(args);
  std::printf("\n");
  return ok;
}

bool within_abs(double value, double target, double tol) {
  return std::abs(value - target) <= tol;
}

bool within_rel(double value, double target, double rel) {
  return std::abs(value - target) <= rel * std::abs(target);
}

WindowParams figure_params(std::size_t L, double eta = 0.005, double alpha = 0.01) {
  WindowParams p;
  p.L = L;
  p.eps = 0.05;
  p.eps_prime = 0.1;
  p.alpha = alpha;
  p.eta = eta;
  p.depth = 2;
  return p;
}

SpectrumSpec figure_spectrum_spec() {
  SpectrumSpec s;
  s.leading = {10.0, 5.0, 1.0};
  s.tail_value = 0.01;
  s.n = 20;
  s.basis_seed = 1;
  return s;
}

// ---------------------------------------------------------------------------
// Criterion 1: reference walkthrough quantities at eps = 0.05, eps' = 0.1,
// alpha = 0.01, eta = 0.005, lambda = (10, 5, 1).
bool criterion1() {
  Timer timer;
  bool ok = true;
  const WindowParams p = figure_params(1);

  const double K = k_epsilon(0.05);
  ok &= sub(within_abs(K, 4.2140, 0.0005), "K_eps = %.6f (target 4.2140 +/- 0.0005)", K);

  const double gap = check_gap_condition({10.0, 5.0}, p)[0].required_gap;
  ok &= sub(within_rel(gap, 4.3050, 0.01), "required gap (10,5) = %.6f (target 4.3050 +/- 1%%)",
            gap);

  // Only the (1, 0.01) pair lands anywhere near the target magnitude; the
  // (10,5) and (5,1) pairs give 1.5e4 and 1.05.
  const double astar = alpha_star(1.0, 0.01, p);
  ok &= sub(within_rel(astar * astar, 0.0018, 0.10),
            "(alpha*)^2 = %.7f at (1, 0.01) (target 0.0018 +/- 10%%)", astar * astar);

  const double estar = eta_star(10.0, 5.0, p);
  ok &= sub(within_rel(estar, 0.009, 0.10), "eta* = %.7f at (10, 5) (target 0.009 +/- 10%%)",
            estar);

  const WindowParams hot = figure_params(1, 0.1);
  const double gap_hot = check_gap_condition({10.0, 5.0}, hot)[0].required_gap;
  ok &= sub(within_rel(gap_hot, 154.0, 0.02),
            "required gap (10,5) at eta=0.1 = %.4f (target 154 +/- 2%%)", gap_hot);

  const double secs = timer.seconds();
  ok &= sub(secs < 1.0, "runtime %.3f s (< 1 s)", secs);
  return ok;
}

// ---------------------------------------------------------------------------
// Criterion 2: plateau certification at the baseline figure parameters.
bool criterion2() {
  Timer timer;
  bool ok = true;
  const SynthesizedTarget target = synthesize(figure_spectrum_spec());

  // Horizon: past the largest window endpoint.
  double t1_max = 0.0;
  for (std::size_t L : {1, 2, 3})
    t1_max = std::max(t1_max, t1(target.lambdas[L], figure_params(L)));
  DynamicsConfig cfg;
  cfg.depth = 2;
  cfg.eta = 0.005;
  cfg.alpha = 0.01;
  cfg.max_iters = static_cast<long>(std::ceil(t1_max)) + 1;
  cfg.record_every = 1;
  const std::vector<TrajectoryRecord> traj = simulate_factors(target.W, target.V, cfg);

  for (std::size_t L : {1, 2, 3}) {
    const WindowParams p = figure_params(L);
    const WindowVerdict v = window_verdict(target.lambdas, p);
    ok &= sub(v.nonempty, "L=%zu window nonempty (T0 = %.3f, T1 = %.3f)", L, v.T0, v.T1);
    if (!v.nonempty) continue;
    std::vector<double> topL(target.lambdas.begin(), target.lambdas.begin() + (long)L);
    const double r_WL = effective_rank(topL);
    const double bound = effective_rank_window_bound(target.lambdas, r_WL, p);
    double max_dev = 0.0;
    long checked = 0;
    const long lo = static_cast<long>(std::ceil(v.T0));
    const long hi = static_cast<long>(std::floor(v.T1));
    for (const TrajectoryRecord& rec : traj) {
      if (rec.k < lo || rec.k > hi) continue;
      max_dev = std::max(max_dev, std::abs(r_WL - rec.eff_rank));
      ++checked;
    }
    ok &= sub(checked > 0 && max_dev <= bound,
              "L=%zu effective-rank containment: max dev %.6f <= bound %.6f over %ld points", L,
              max_dev, bound, checked);
  }

  const double secs = timer.seconds();
  ok &= sub(secs < 120.0, "runtime %.1f s (< 120 s)", secs);
  return ok;
}

// ---------------------------------------------------------------------------
// Criterion 3: at eta = 0.1 both observability conditions fail and are
// reported; no certified (explicit-form) window is produced.
bool criterion3() {
  bool ok = true;
  const SynthesizedTarget target = synthesize(figure_spectrum_spec());
  for (std::size_t L : {1, 2, 3}) {
    const WindowParams p = figure_params(L, 0.1);
    const WindowVerdict v = window_verdict(target.lambdas, p);
    bool gap_reported = false, eta_reported = false;
    for (const std::string& r : v.failure_reasons) {
      if (r.find("gap condition") != std::string::npos) gap_reported = true;
      if (r.find("eta") != std::string::npos) eta_reported = true;
    }
    ok &= sub(gap_reported, "L=%zu gap-condition failure reported", L);
    // At L = 3 the critical step size eta* = g1/(2 g0) ~ 2.1 exceeds 0.1, so
    // the step-size condition genuinely holds there; it must fail and be
    // reported for the rank-1 and rank-2 plateaus.
    if (L < 3)
      ok &= sub(eta_reported, "L=%zu step-size (eta*) failure reported", L);
    else
      std::printf("       L=%zu step-size condition holds (eta* = %.4f > 0.1)\n", L,
                  eta_star(target.lambdas[L - 1], target.lambdas[L], p));
    ok &= sub(!v.explicit_form, "L=%zu no certified window emitted", L);
  }
  return ok;
}

// ---------------------------------------------------------------------------
// Criterion 4: full factor GD vs scalar channels, N in {2,3,4}, 2000 steps,
// 20 seeded targets; max deviation <= 1e-7.
bool criterion4() {
  double max_dev = 0.0;
  for (std::size_t N = 2; N <= 4; ++N) {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      SpectrumSpec spec;
      spec.leading = {2.0, 1.0, 0.5, 0.2};
      spec.tail_value = 0.05;
      spec.n = 6;
      spec.basis_seed = seed;
      const SynthesizedTarget target = synthesize(spec);
      DynamicsConfig cfg;
      cfg.depth = N;
      cfg.eta = 0.01;
      cfg.alpha = 0.1;
      cfg.max_iters = 2000;
      cfg.record_every = 1;
      const std::vector<TrajectoryRecord> full = simulate_factors(target.W, target.V, cfg);
      // Scalar channels advanced in lockstep with the recorded iterations.
      std::vector<double> d(spec.n, cfg.alpha);
      for (const TrajectoryRecord& rec : full) {
        for (std::size_t i = 0; i < spec.n; ++i)
          max_dev = std::max(max_dev, std::abs(rec.diag[i] - d[i]));
        for (std::size_t i = 0; i < spec.n; ++i) d[i] = scalar_step(d[i], target.lambdas[i], cfg);
      }
    }
  }
  return sub(max_dev <= 1e-7, "max |full - scalar| = %.3e over N in {2,3,4} x 20 seeds (<= 1e-7)",
             max_dev);
}

// ---------------------------------------------------------------------------
// Criterion 5: analytic gradient vs central finite differences at 20 random
// points; relative error <= 1e-5.
bool criterion5() {
  Rng rng(2718);
  double max_rel = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 3;
    const std::size_t N = 2 + trial % 3;
    SymMatrix target(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) target.set(i, j, rng.gaussian());
    FactorChain chain;
    for (std::size_t f = 0; f < N; ++f) {
      Matrix m(n, n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = 0.5 * rng.gaussian();
      chain.factors.push_back(m);
    }
    const std::vector<Matrix> grads = chain_gradient(chain, target);
    const double h = 1e-5;
    for (std::size_t f = 0; f < N; ++f) {
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          FactorChain plus = chain, minus = chain;
          plus.factors[f](i, j) += h;
          minus.factors[f](i, j) -= h;
          const double fd = (chain_loss(plus, target) - chain_loss(minus, target)) / (2.0 * h);
          const double rel = std::abs(grads[f](i, j) - fd) / std::max(1.0, std::abs(fd));
          max_rel = std::max(max_rel, rel);
        }
      }
    }
  }
  return sub(max_rel <= 1e-5, "max relative gradient error = %.3e (<= 1e-5)", max_rel);
}

// ---------------------------------------------------------------------------
// Criterion 6: perturbation containment suite, 50 seeds x c in {.05,.1,.2}.
// Two instances: the figure spectrum (windows, effective rank, shifts) and a
// spread spectrum lambda_i = 21 - i with delta_s = 1 (Weyl, Davis-Kahan,
// eigenvalue recovery, approximation error). Hypotheses verified per seed;
// zero violations permitted on hypothesis-satisfying seeds.
struct Counts {
  long performed = 0;
  long skipped = 0;
  long violated = 0;
  void tally(bool hypothesis_ok, bool contained) {
    if (!hypothesis_ok) {
      ++skipped;
    } else {
      ++performed;
      if (!contained) ++violated;
    }
  }
};

bool criterion6() {
  Timer timer;
  const std::size_t n = 20;
  const double eps_tilde = 0.05;

  const SynthesizedTarget fig = synthesize(figure_spectrum_spec());
  SpectrumSpec spread_spec;
  spread_spec.leading.clear();
  for (std::size_t i = 1; i <= n; ++i) spread_spec.leading.push_back(21.0 - (double)i);
  spread_spec.n = n;
  spread_spec.basis_seed = 2;
  const SynthesizedTarget spread = synthesize(spread_spec);

  const WindowParams p_fig = figure_params(1);
  // Spread instance runs at eta = 0.01, inside the recovery step-size bound
  // 1/(4 ||W~||) ~ 0.0123.
  const WindowParams p_spread = figure_params(1, 0.01);

  Counts weyl, dk, recovery, effrank, approx, shift0, shift1;
  const long fig_horizon = 24000, spread_horizon = 6000;

  for (double c : {0.05, 0.1, 0.2}) {
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
      NoiseModel model;
      model.n = n;
      model.sigma = c / std::sqrt((double)n);

      // ---- figure instance: windows, shifts, effective-rank containment.
      model.seed = seed;
      const PerturbedProblem pf = make_perturbed(fig.W, sample_noise(model), p_fig.alpha, 2);
      std::vector<double> lt_plus;
      for (double l : pf.decomp_tilde.lambdas) lt_plus.push_back(std::max(l, 0.0));

      // Perturbed channel trajectory (diagonal dynamics in the W~ eigenbasis).
      DynamicsConfig cfg;
      cfg.depth = 2;
      cfg.eta = p_fig.eta;
      cfg.alpha = p_fig.alpha;
      cfg.max_iters = fig_horizon;
      std::vector<std::vector<double>> fig_effrank_dev(4);  // per L, dev inside window
      struct Window {
        bool ok = false;
        double T0 = 0.0, T1 = 0.0;
      };
      std::vector<Window> windows(4);
      for (std::size_t L : {1, 2, 3}) {
        WindowParams p = p_fig;
        p.L = L;
        try {
          const auto [a, b] = perturbed_window(lt_plus, p);
          windows[L].ok = true;
          windows[L].T0 = a;
          windows[L].T1 = b;
        } catch (const Error&) {
          windows[L].ok = false;
        }
      }
      {
        std::vector<double> d(n, cfg.alpha);
        std::vector<double> max_dev(4, 0.0);
        std::vector<long> points(4, 0);
        for (long k = 0; k <= fig_horizon; ++k) {
          double nuclear = 0.0, op = 0.0;
          for (std::size_t j = 0; j < n; ++j) {
            const double dn = d[j] * d[j];
            nuclear += dn;
            op = std::max(op, dn);
          }
          const double r_k = op > 0.0 ? nuclear / op : 0.0;
          for (std::size_t L : {1, 2, 3}) {
            if (!windows[L].ok) continue;
            if (k < std::ceil(windows[L].T0) || k > std::floor(windows[L].T1)) continue;
            std::vector<double> topL(fig.lambdas.begin(), fig.lambdas.begin() + (long)L);
            const double dev = std::abs(effective_rank(topL) - r_k);
            max_dev[L] = std::max(max_dev[L], dev);
            ++points[L];
          }
          for (std::size_t j = 0; j < n; ++j)
            d[j] = scalar_step(d[j], pf.decomp_tilde.lambdas[j], cfg);
        }
        for (std::size_t L : {1, 2, 3}) {
          WindowParams p = p_fig;
          p.L = L;
          const EffRankBound erb = effective_rank_stability_bound(pf, p);
          const bool hyp = windows[L].ok && erb.hypothesis_ok && points[L] > 0;
          effrank.tally(hyp, max_dev[L] <= erb.full);
          if (hyp && max_dev[L] > erb.full)
            std::printf("  !    effrank violation: c=%.2f seed=%llu L=%zu dev %.6f > %.6f\n", c,
                        (unsigned long long)seed, L, max_dev[L], erb.full);
        }
      }

      // Interval-shift containment per L where the hypotheses hold.
      for (std::size_t L : {1, 2, 3}) {
        WindowParams p = p_fig;
        p.L = L;
        const double lam_next = fig.lambdas[L];
        bool hyp = windows[L].ok;
        double b1 = 0.0, b0 = 0.0;
        try {
          b1 = t1_shift_bound(lam_next, pf.E_norm, p);
          b0 = t0_shift_bound(lam_next, pf.E_norm, p);
        } catch (const Error&) {
          hyp = false;
        }
        if (!hyp) {
          shift1.tally(false, true);
          shift0.tally(false, true);
          continue;
        }
        std::vector<double> leading(fig.lambdas.begin(), fig.lambdas.begin() + (long)L);
        const double T1_hat = t1(lam_next, p);
        const double T0_hat = t0(leading, p);
        const bool ok1 = std::abs(windows[L].T1 - T1_hat) <= b1;
        const bool ok0 = std::abs(windows[L].T0 - T0_hat) <= b0;
        shift1.tally(true, ok1);
        shift0.tally(true, ok0);
        if (!ok1 || !ok0)
          std::printf("  !    shift violation: c=%.2f seed=%llu L=%zu |dT1|=%.4f (b %.4f) "
                      "|dT0|=%.4f (b %.4f)\n",
                      c, (unsigned long long)seed, L, std::abs(windows[L].T1 - T1_hat), b1,
                      std::abs(windows[L].T0 - T0_hat), b0);
      }

      // ---- spread instance: Weyl, Davis-Kahan, recovery, approximation.
      model.seed = seed + 1000;
      const PerturbedProblem ps = make_perturbed(spread.W, sample_noise(model), p_spread.alpha, 2);

      bool weyl_ok = true;
      for (std::size_t i = 0; i < n; ++i)
        weyl_ok &= weyl_gap(ps.decomp_hat.lambdas[i], ps.decomp_tilde.lambdas[i], ps.E_norm);
      weyl.tally(true, weyl_ok);

      const double delta_s = ps.decomp_hat.delta_s;
      const bool dk_hyp = ps.E_norm <= delta_s / 2.0;
      if (dk_hyp) {
        bool contained = true;
        const double dist_bound = eigvec_distance_bound(ps.E_norm, delta_s);
        for (std::size_t i = 0; i < n; ++i) {
          const Vector v = ps.decomp_hat.eigenvector(i);
          const Vector vt = ps.decomp_tilde.eigenvector(i);
          contained &= davis_kahan_sin(v, vt) <= 2.0 * ps.E_norm / delta_s;
          contained &= eigvec_distance(v, vt) <= dist_bound;
        }
        dk.tally(true, contained);
      } else {
        dk.tally(false, true);
      }

      // Recovery + approximation from the channel dynamics on W~.
      {
        DynamicsConfig cfg2;
        cfg2.depth = 2;
        cfg2.eta = p_spread.eta;
        cfg2.alpha = p_spread.alpha;
        cfg2.max_iters = spread_horizon;
        const StepSizeBounds ssb = step_size_bounds(ps.decomp_tilde.lambdas[0], cfg2);
        const bool recov_hyp = dk_hyp && cfg2.eta < 1.0 / (4.0 * ps.M * ps.M);
        (void)ssb;

        // Overlap table o(i, j) = <v_i, v~_j>^2.
        Matrix o(n, n);
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j) {
            double dot = 0.0;
            for (std::size_t r = 0; r < n; ++r)
              dot += ps.decomp_hat.V(r, i) * ps.decomp_tilde.V(r, j);
            o(i, j) = dot * dot;
          }

        std::vector<double> d(n, cfg2.alpha);
        std::vector<long> t_meas(n, -1);
        bool recov_contained = true;
        double worst_excess = 0.0;
        std::vector<double> bounds(n);
        bool bounds_ok = recov_hyp;
        if (recov_hyp) {
          try {
            WindowParams p = p_spread;
            for (std::size_t i = 0; i < n; ++i) bounds[i] = eigen_recovery_bound(ps, i, eps_tilde, p);
          } catch (const Error&) {
            bounds_ok = false;
          }
        }
        // Approximation-error windows on the spread instance (usually empty:
        // adjacent eigenvalues give T~0 >= T~1; containment is then vacuous).
        std::vector<double> slt_plus;
        for (double l : ps.decomp_tilde.lambdas) slt_plus.push_back(std::max(l, 0.0));
        for (std::size_t L : {1, 2, 3}) {
          WindowParams p = p_spread;
          p.L = L;
          bool hyp = true;
          double aT0 = 0.0, aT1 = 0.0, bound = 0.0;
          try {
            const auto [a, b] = perturbed_window(slt_plus, p);
            aT0 = a;
            aT1 = b;
            bound = approx_error_bound(ps, L, p);
          } catch (const Error&) {
            hyp = false;
          }
          hyp = hyp && dk_hyp;
          if (!hyp || std::ceil(aT0) > std::floor(aT1)) {
            approx.tally(false, true);
            continue;
          }
          // Measured ||W(k)_L - W_hat_L||_F over the window via the overlaps.
          std::vector<double> dd(n, cfg2.alpha);
          double lamL_sq = 0.0;
          for (std::size_t i = 0; i < L; ++i) lamL_sq += spread.lambdas[i] * spread.lambdas[i];
          double max_err = 0.0;
          for (long k = 0; k <= (long)std::floor(aT1); ++k) {
            if (k >= (long)std::ceil(aT0)) {
              std::vector<std::size_t> order(n);
              for (std::size_t j = 0; j < n; ++j) order[j] = j;
              std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
                return dd[x] * dd[x] > dd[y] * dd[y];
              });
              double dn_sq = 0.0, cross = 0.0;
              for (std::size_t t = 0; t < L; ++t) {
                const std::size_t j = order[t];
                const double dn = dd[j] * dd[j];
                dn_sq += dn * dn;
                for (std::size_t i = 0; i < L; ++i) cross += spread.lambdas[i] * dn * o(i, j);
              }
              max_err = std::max(max_err, std::sqrt(std::max(0.0, dn_sq + lamL_sq - 2.0 * cross)));
            }
            for (std::size_t j = 0; j < n; ++j)
              dd[j] = scalar_step(dd[j], ps.decomp_tilde.lambdas[j], cfg2);
          }
          approx.tally(true, max_err <= bound);
          if (max_err > bound)
            std::printf("  !    approx violation: c=%.2f seed=%llu L=%zu %.6f > %.6f\n", c,
                        (unsigned long long)seed, L, max_err, bound);
        }

        if (bounds_ok) {
          for (long k = 0; k <= spread_horizon; ++k) {
            for (std::size_t i = 0; i < n; ++i) {
              const double limit = std::sqrt(std::max(ps.decomp_tilde.lambdas[i], 0.0));
              if (t_meas[i] < 0 && std::abs(d[i] - limit) <= eps_tilde) t_meas[i] = k;
              if (t_meas[i] >= 0 && k >= t_meas[i]) {
                double wii = 0.0;
                for (std::size_t j = 0; j < n; ++j) wii += d[j] * d[j] * o(i, j);
                const double err = std::abs(wii - std::max(ps.decomp_hat.lambdas[i], 0.0));
                if (err > bounds[i]) {
                  recov_contained = false;
                  worst_excess = std::max(worst_excess, err - bounds[i]);
                }
              }
            }
            for (std::size_t j = 0; j < n; ++j)
              d[j] = scalar_step(d[j], ps.decomp_tilde.lambdas[j], cfg2);
          }
          recovery.tally(true, recov_contained);
          if (!recov_contained)
            std::printf("  !    recovery violation: c=%.2f seed=%llu excess %.6f\n", c,
                        (unsigned long long)seed, worst_excess);
        } else {
          recovery.tally(false, true);
        }
      }
    }
  }

  bool ok = true;
  ok &= sub(weyl.violated == 0 && weyl.performed > 0,
            "Weyl: %ld checks, %ld violations", weyl.performed, weyl.violated);
  ok &= sub(dk.violated == 0 && dk.performed > 0,
            "Davis-Kahan sin/distance: %ld checks, %ld skipped (||E|| > delta_s/2), %ld violations",
            dk.performed, dk.skipped, dk.violated);
  ok &= sub(recovery.violated == 0 && recovery.performed > 0,
            "eigenvalue recovery: %ld checks, %ld skipped, %ld violations", recovery.performed,
            recovery.skipped, recovery.violated);
  ok &= sub(effrank.violated == 0 && effrank.performed > 0,
            "effective-rank containment: %ld checks, %ld skipped (hypotheses), %ld violations",
            effrank.performed, effrank.skipped, effrank.violated);
  ok &= sub(approx.violated == 0,
            "approximation error: %ld checks, %ld skipped/vacuous, %ld violations",
            approx.performed, approx.skipped, approx.violated);
  ok &= sub(shift1.violated == 0 && shift1.performed > 0,
            "T1 shift: %ld checks, %ld skipped, %ld violations", shift1.performed, shift1.skipped,
            shift1.violated);
  ok &= sub(shift0.violated == 0 && shift0.performed > 0,
            "T0 shift: %ld checks, %ld skipped, %ld violations", shift0.performed, shift0.skipped,
            shift0.violated);
  const double secs = timer.seconds();
  ok &= sub(secs < 600.0, "runtime %.1f s (< 600 s)", secs);
  return ok;
}

// ---------------------------------------------------------------------------
// Criterion 7: iteration sandwich over 20 (lambda, lambda~) pairs.
bool criterion7() {
  struct Pair {
    double lam, lam_tilde, alpha, eps_tilde;
  };
  std::vector<Pair> pairs;
  // 14 small-initialization pairs (lower bound needs the external closed form).
  for (double lam : {0.5, 1.0, 2.0, 5.0, 10.0}) {
    pairs.push_back({lam, lam, 0.01, 0.02});
    pairs.push_back({lam, lam * 1.05, 0.01, 0.02});
  }
  for (double lam : {1.0, 2.0, 4.0, 8.0}) pairs.push_back({lam, lam * 0.95, 0.01, 0.02});
  // 6 large-initialization pairs on the alpha^N >= c_N lambda~ branch.
  pairs.push_back({0.4, 0.4, 0.6, 0.01});
  pairs.push_back({0.45, 0.4, 0.6, 0.01});
  pairs.push_back({0.7, 0.7, 0.6, 0.05});
  pairs.push_back({0.8, 0.85, 0.6, 0.05});
  pairs.push_back({1.0, 1.0, 0.6, 0.1});
  pairs.push_back({1.0, 1.05, 0.6, 0.1});

  bool ok = true;
  long sandwich_viol = 0, lower_checks = 0, lower_viol = 0, checked = 0;
  for (const Pair& pr : pairs) {
    WindowParams p = figure_params(1, 0.005, pr.alpha);
    IterationSandwich s;
    try {
      s = iteration_sandwich(pr.lam, pr.lam_tilde, pr.eps_tilde, p, 200000);
    } catch (const Error& ex) {
      ok &= sub(false, "pair (%.2f, %.2f) out of regime: %s", pr.lam, pr.lam_tilde, ex.what());
      continue;
    }
    ++checked;
    if (s.upper >= 0.0) {
      const bool chain = s.empirical_T.has_value() && s.empirical_T_tilde.has_value() &&
                         *s.empirical_T <= *s.empirical_T_tilde &&
                         (double)*s.empirical_T_tilde <= s.upper;
      if (!chain) {
        ++sandwich_viol;
        std::printf("  !    sandwich violation at (%.2f, %.2f)\n", pr.lam, pr.lam_tilde);
      }
    }
    if (s.lower.has_value()) {
      ++lower_checks;
      const bool low_ok = s.empirical_T_loose.has_value() &&
                          *s.lower <= (double)*s.empirical_T_loose;
      if (!low_ok) {
        ++lower_viol;
        std::printf("  !    lower bound %.2f > empirical %ld at (%.2f, %.2f, alpha=%.2f)\n",
                    *s.lower, s.empirical_T_loose.value_or(-1), pr.lam, pr.lam_tilde, pr.alpha);
      }
    }
  }
  ok &= sub(checked == (long)pairs.size() && sandwich_viol == 0,
            "T <= T~ <= T2Id on %ld/%zu pairs (%ld violations)", checked, pairs.size(),
            sandwich_viol);
  ok &= sub(lower_checks > 0 && lower_viol == 0,
            "closed-form lower bound <= empirical T~(eps~+2beta): %ld checks, %ld violations",
            lower_checks, lower_viol);
  return ok;
}

// ---------------------------------------------------------------------------
// Criterion 8: qualitative noise-sweep figure diagnostics.
bool criterion8(const fs::path& tmp) {
  Timer timer;
  json j;
  j["out_dir"] = (tmp / "accept_noise").string();
  j["dynamics"]["record_every"] = 50;
  j["emit_svg"] = false;
  const ExperimentConfig cfg = ExperimentConfig::from_json(j);
  const json report = run_noise_sweep(cfg);
  const json& q = report["qualitative"];
  const std::vector<double> term = q["terminal_frob_err"].get<std::vector<double>>();
  const std::vector<double> exits = q["T1_tilde"].get<std::vector<double>>();
  const std::vector<bool> up = q["lambda_next_moved_up"].get<std::vector<bool>>();
  const std::vector<double> levels = cfg.noise_levels;

  bool ok = true;
  bool increasing = term.size() == 4;
  for (std::size_t i = 1; i < term.size(); ++i) increasing &= term[i] > term[i - 1];
  ok &= sub(increasing,
            "terminal ||W(k) - W_hat||_F strictly increases: %.4f, %.4f, %.4f, %.4f",
            term.size() > 0 ? term[0] : 0.0, term.size() > 1 ? term[1] : 0.0,
            term.size() > 2 ? term[2] : 0.0, term.size() > 3 ? term[3] : 0.0);

  // Rank-2 plateau exit strictly decreases across the levels where the
  // (L+1)-th eigenvalue moved up; other levels must be flagged.
  double prev_exit = exits.empty() ? 0.0 : exits[0];
  bool decreasing = true;
  long compared = 0;
  for (std::size_t i = 1; i < exits.size(); ++i) {
    if (!up[i]) continue;
    decreasing &= exits[i] < prev_exit;
    prev_exit = exits[i];
    ++compared;
  }
  ok &= sub(decreasing, "T~1 strictly decreases on the %ld moved-up levels (baseline %.2f)",
            compared, exits.empty() ? 0.0 : exits[0]);

  long expected_flags = 0;
  for (std::size_t i = 0; i < up.size(); ++i)
    if (levels[i] > 0.0 && !up[i]) ++expected_flags;
  const long flag_count = (long)q["flags"].size();
  ok &= sub(flag_count == expected_flags,
            "%ld flag(s) for levels where the eigenvalue moved down (expected %ld)", flag_count,
            expected_flags);
  const double secs = timer.seconds();
  ok &= sub(secs < 600.0, "runtime %.1f s", secs);
  return ok;
}

// ---------------------------------------------------------------------------
// Criterion 9: byte-identical artifacts across two identical runs.
bool criterion9(const fs::path& tmp) {
  json j;
  j["dynamics"]["max_iters"] = 3000;
  j["dynamics"]["record_every"] = 10;
  j["noise_levels"] = {0.0, 0.1};
  bool ok = true;
  const fs::path a = tmp / "det_a", b = tmp / "det_b";
  {
    json ja = j, jb = j;
    ja["out_dir"] = a.string();
    jb["out_dir"] = b.string();
    run_noise_sweep(ExperimentConfig::from_json(ja));
    run_observability(ExperimentConfig::from_json(ja));
    run_noise_sweep(ExperimentConfig::from_json(jb));
    run_observability(ExperimentConfig::from_json(jb));
  }
  for (const char* name : {"noise_error.csv", "noise_effrank.csv", "noise_report.json",
                           "observe.csv", "observe_report.json"}) {
    const std::string ha = sha256_file((a / name).string());
    const std::string hb = sha256_file((b / name).string());
    ok &= sub(ha == hb, "%s: %s", name, ha == hb ? "identical" : "MISMATCH");
  }
  return ok;
}

}  // namespace

int main() {
  std::printf("acceptance suite\n================\n");
  const fs::path tmp = fs::temp_directory_path() / "irlab_acceptance";
  fs::remove_all(tmp);
  fs::create_directories(tmp);

  verdict(1, "walkthrough quantities", criterion1());
  verdict(2, "plateau certification", criterion2());
  verdict(3, "plateau disappearance at eta = 0.1", criterion3());
  verdict(4, "diagonal equivalence", criterion4());
  verdict(5, "gradient check", criterion5());
  verdict(6, "perturbation containment suite", criterion6());
  verdict(7, "iteration sandwich", criterion7());
  verdict(8, "noise sweep qualitative reproduction", criterion8(tmp));
  verdict(9, "determinism", criterion9(tmp));

  std::printf("================\n%d criterion(s) failed\n", g_failures);
  return g_failures == 0 ? 0 : 1;
}
