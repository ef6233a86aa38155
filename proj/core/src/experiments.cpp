#include "irlab/experiments.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "irlab/csv.hpp"
#include "irlab/eigen.hpp"
#include "irlab/errors.hpp"
#include "irlab/perturbation.hpp"
#include "irlab/svg.hpp"

namespace irlab {

namespace fs = std::filesystem;

namespace {

ExperimentConfig defaults() {
  ExperimentConfig c;
  c.spectrum.leading = {10.0, 5.0, 1.0};
  c.spectrum.tail_fill = SpectrumSpec::TailFill::constant;
  c.spectrum.tail_value = 0.01;
  c.spectrum.n = 20;
  c.spectrum.basis_seed = 1;
  c.dynamics.depth = 2;
  c.dynamics.eta = 0.005;
  c.dynamics.alpha = 0.01;
  c.dynamics.max_iters = 0;  // auto: 5 * ceil(max_L T1)
  c.dynamics.record_every = 1;
  c.window.eps = 0.05;
  c.window.eps_prime = 0.1;
  c.noise.seed = 1;
  c.noise.delta_prime = 0.05;
  c.noise.c_abs = 1.0;
  return c;
}

void sync_window(ExperimentConfig& c) {
  c.window.alpha = c.dynamics.alpha;
  c.window.eta = c.dynamics.eta;
  c.window.depth = c.dynamics.depth;
  c.noise.n = c.spectrum.n;
}

WindowParams params_for_rank(const ExperimentConfig& c, std::size_t L) {
  WindowParams p = c.window;
  p.L = L;
  return p;
}

json verdict_to_json(const WindowVerdict& v) {
  json j;
  j["T0"] = v.T0;
  j["T1"] = v.T1;
  j["nonempty"] = v.nonempty;
  j["explicit_form"] = v.explicit_form;
  j["alpha_star"] = v.alpha_star;
  j["eta_star"] = v.eta_star;
  j["L_prime"] = v.L_prime;
  j["L_dprime"] = v.L_dprime;
  j["gap_checks"] = json::array();
  for (const GapCheck& g : v.gap_checks) {
    json c;
    c["pair"] = g.ell;
    c["actual_gap"] = g.actual_gap;
    c["required_gap"] = g.required_gap;
    c["level_difference"] = g.level_difference;
    c["pass"] = g.pass;
    j["gap_checks"].push_back(c);
  }
  j["failure_reasons"] = v.failure_reasons;
  return j;
}

fs::path resolve_out_dir(const ExperimentConfig& c) {
  fs::path dir = c.out_dir;
  fs::create_directories(dir);
  return dir;
}

// Exact cross-overlap table o_ij = <v_i, v~_j>^2 between two bases.
Matrix overlap_squared(const Matrix& V, const Matrix& V_tilde) {
  const std::size_t n = V.rows();
  Matrix o(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      double dot = 0.0;
      for (std::size_t r = 0; r < n; ++r) dot += V(r, i) * V_tilde(r, j);
      o(i, j) = dot * dot;
    }
  }
  return o;
}

}  // namespace

long ExperimentConfig::default_max_iters() const {
  WindowParams p = window;
  const std::vector<double> spec = spectrum.full_spectrum();
  double t1_max = 0.0;
  for (std::size_t L : ranks) {
    if (L >= spec.size()) continue;
    p.L = L;
    t1_max = std::max(t1_max, t1(spec[L], p));
  }
  if (t1_max <= 0.0) return 100000;
  return 5L * static_cast<long>(std::ceil(t1_max));
}

ExperimentConfig ExperimentConfig::from_json(const json& j) {
  ExperimentConfig c = defaults();
  try {
    if (j.contains("spectrum")) {
      const json& s = j["spectrum"];
      if (s.contains("leading")) c.spectrum.leading = s["leading"].get<std::vector<double>>();
      if (s.contains("tail_fill")) {
        const std::string tf = s["tail_fill"].get<std::string>();
        if (tf == "constant") {
          c.spectrum.tail_fill = SpectrumSpec::TailFill::constant;
        } else if (tf == "log_spaced") {
          c.spectrum.tail_fill = SpectrumSpec::TailFill::log_spaced;
        } else {
          throw InputError("config: tail_fill must be 'constant' or 'log_spaced'");
        }
      }
      if (s.contains("tail_value")) c.spectrum.tail_value = s["tail_value"].get<double>();
      if (s.contains("tail_hi")) c.spectrum.tail_hi = s["tail_hi"].get<double>();
      if (s.contains("tail_lo")) c.spectrum.tail_lo = s["tail_lo"].get<double>();
      if (s.contains("n")) c.spectrum.n = s["n"].get<std::size_t>();
      if (s.contains("basis_seed")) c.spectrum.basis_seed = s["basis_seed"].get<std::uint64_t>();
    }
    if (j.contains("dynamics")) {
      const json& d = j["dynamics"];
      if (d.contains("depth")) c.dynamics.depth = d["depth"].get<std::size_t>();
      if (d.contains("eta")) c.dynamics.eta = d["eta"].get<double>();
      if (d.contains("alpha")) c.dynamics.alpha = d["alpha"].get<double>();
      if (d.contains("max_iters")) c.dynamics.max_iters = d["max_iters"].get<long>();
      if (d.contains("record_every")) c.dynamics.record_every = d["record_every"].get<long>();
    }
    if (j.contains("window")) {
      const json& w = j["window"];
      if (w.contains("eps")) c.window.eps = w["eps"].get<double>();
      if (w.contains("eps_prime")) c.window.eps_prime = w["eps_prime"].get<double>();
    }
    if (j.contains("ranks")) c.ranks = j["ranks"].get<std::vector<std::size_t>>();
    if (j.contains("eta_sweep")) c.eta_sweep = j["eta_sweep"].get<std::vector<double>>();
    if (j.contains("noise_levels")) c.noise_levels = j["noise_levels"].get<std::vector<double>>();
    if (j.contains("noise")) {
      const json& nz = j["noise"];
      if (nz.contains("seed")) c.noise.seed = nz["seed"].get<std::uint64_t>();
      if (nz.contains("delta_prime")) c.noise.delta_prime = nz["delta_prime"].get<double>();
      if (nz.contains("c_abs")) c.noise.c_abs = nz["c_abs"].get<double>();
    }
    if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("seeds")) c.seeds = j["seeds"].get<std::size_t>();
    if (j.contains("out_dir")) c.out_dir = j["out_dir"].get<std::string>();
    if (j.contains("emit_csv")) c.emit_csv = j["emit_csv"].get<bool>();
    if (j.contains("emit_svg")) c.emit_svg = j["emit_svg"].get<bool>();
    if (j.contains("emit_report")) c.emit_report = j["emit_report"].get<bool>();
    if (j.contains("log_x")) c.log_x = j["log_x"].get<bool>();
    if (j.contains("strict")) c.strict = j["strict"].get<bool>();
  } catch (const json::exception& ex) {
    throw InputError(std::string("config: malformed field: ") + ex.what());
  }
  sync_window(c);
  // Validate eagerly so bad configs fail with exit code 2, not mid-run.
  c.spectrum.full_spectrum();
  c.window.validate();
  if (c.dynamics.max_iters == 0) c.dynamics.max_iters = c.default_max_iters();
  c.dynamics.validate();
  c.noise.validate();
  return c;
}

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw IoError("config: cannot open " + path);
  json j;
  try {
    is >> j;
  } catch (const json::exception& ex) {
    throw InputError(std::string("config: invalid JSON: ") + ex.what());
  }
  return from_json(j);
}

json ExperimentConfig::to_json() const {
  json j;
  j["spectrum"]["leading"] = spectrum.leading;
  j["spectrum"]["tail_fill"] =
      spectrum.tail_fill == SpectrumSpec::TailFill::constant ? "constant" : "log_spaced";
  j["spectrum"]["tail_value"] = spectrum.tail_value;
  j["spectrum"]["tail_hi"] = spectrum.tail_hi;
  j["spectrum"]["tail_lo"] = spectrum.tail_lo;
  j["spectrum"]["n"] = spectrum.n;
  j["spectrum"]["basis_seed"] = spectrum.basis_seed;
  j["dynamics"]["depth"] = dynamics.depth;
  j["dynamics"]["eta"] = dynamics.eta;
  j["dynamics"]["alpha"] = dynamics.alpha;
  j["dynamics"]["max_iters"] = dynamics.max_iters;
  j["dynamics"]["record_every"] = dynamics.record_every;
  j["window"]["eps"] = window.eps;
  j["window"]["eps_prime"] = window.eps_prime;
  j["ranks"] = ranks;
  j["eta_sweep"] = eta_sweep;
  j["noise_levels"] = noise_levels;
  j["noise"]["seed"] = noise.seed;
  j["noise"]["delta_prime"] = noise.delta_prime;
  j["noise"]["c_abs"] = noise.c_abs;
  j["seed"] = seed;
  j["seeds"] = seeds;
  j["out_dir"] = out_dir;
  j["emit_csv"] = emit_csv;
  j["emit_svg"] = emit_svg;
  j["emit_report"] = emit_report;
  j["log_x"] = log_x;
  j["strict"] = strict;
  return j;
}

json certify(const ExperimentConfig& config) {
  const std::vector<double> spectrum = config.spectrum.full_spectrum();
  json out;
  out["K_eps"] = k_epsilon(config.window.eps);
  out["spectrum"] = spectrum;
  out["verdicts"] = json::array();

  std::printf("K_eps = %.6f\n", k_epsilon(config.window.eps));
  for (std::size_t L : config.ranks) {
    if (L >= spectrum.size()) throw InputError("certify: rank L has no lambda_{L+1} in spectrum");
    const WindowParams p = params_for_rank(config, L);
    const WindowVerdict v = window_verdict(spectrum, p);
    json jv = verdict_to_json(v);
    jv["L"] = L;
    out["verdicts"].push_back(jv);

    std::printf("\nL = %zu\n", L);
    for (const GapCheck& g : v.gap_checks)
      std::printf("  gap (lambda_%zu, lambda_%zu): actual %.6f, required %.6f  [%s]\n", g.ell,
                  g.ell + 1, g.actual_gap, g.required_gap, g.pass ? "pass" : "FAIL");
    std::printf("  alpha* = %.8f  (alpha*^2 = %.8f, alpha = %.4f)\n", v.alpha_star,
                v.alpha_star * v.alpha_star, p.alpha);
    std::printf("  eta*   = %.8f  (eta = %.4f)\n", v.eta_star, p.eta);
    std::printf("  T0 = %.4f, T1 = %.4f  -> window %s\n", v.T0, v.T1,
                v.nonempty ? "nonempty" : "EMPTY");
    for (const std::string& r : v.failure_reasons) std::printf("  ! %s\n", r.c_str());
  }
  return out;
}

namespace {

struct SweepResult {
  std::string id;
  std::vector<TrajectoryRecord> trajectory;
  std::vector<json> verdicts;
  std::vector<SvgWindow> certified_windows;
};

CsvTable trajectory_table(const std::vector<SweepResult>& results, std::size_t n) {
  CsvTable t;
  t.header = {"sweep_id", "k", "eff_rank", "loss"};
  for (std::size_t i = 0; i < n; ++i) t.header.push_back("diag_" + std::to_string(i));
  for (const SweepResult& r : results) {
    for (const TrajectoryRecord& rec : r.trajectory) {
      std::vector<std::string> row = {r.id, std::to_string(rec.k), format_double(rec.eff_rank),
                                      format_double(rec.loss)};
      for (double d : rec.diag) row.push_back(format_double(d));
      t.rows.push_back(std::move(row));
    }
  }
  return t;
}

// Max |r(W_hat_L) - r(W(k))| over recorded k in [ceil(T0), floor(T1)].
json window_containment(const std::vector<TrajectoryRecord>& traj, double r_WL, double bound,
                        double T0, double T1) {
  json j;
  double max_dev = 0.0;
  long checked = 0;
  const double lo = std::ceil(T0), hi = std::floor(T1);
  for (const TrajectoryRecord& rec : traj) {
    if (rec.k < lo || rec.k > hi) continue;
    max_dev = std::max(max_dev, std::abs(r_WL - rec.eff_rank));
    ++checked;
  }
  j["k_lo"] = lo;
  j["k_hi"] = hi;
  j["points_checked"] = checked;
  j["max_deviation"] = max_dev;
  j["bound"] = bound;
  j["contained"] = checked > 0 && max_dev <= bound;
  return j;
}

}  // namespace

json run_observability(const ExperimentConfig& config) {
  const SynthesizedTarget target = synthesize(config.spectrum);
  std::vector<double> etas = config.eta_sweep;
  if (etas.empty()) etas = {config.dynamics.eta};

  std::vector<SweepResult> results;
  json report;
  report["mode"] = "observe";
  report["sweep"] = json::array();

  for (double eta : etas) {
    ExperimentConfig c = config;
    c.dynamics.eta = eta;
    sync_window(c);

    SweepResult res;
    {
      std::ostringstream id;
      id << "eta=" << eta;
      res.id = id.str();
    }
    res.trajectory = simulate_factors(target.W, target.V, c.dynamics);

    json sweep_entry;
    sweep_entry["sweep_id"] = res.id;
    sweep_entry["eta"] = eta;
    sweep_entry["verdicts"] = json::array();
    for (std::size_t L : c.ranks) {
      const WindowParams p = params_for_rank(c, L);
      const WindowVerdict v = window_verdict(target.lambdas, p);
      json jv = verdict_to_json(v);
      jv["L"] = L;
      if (v.nonempty) {
        // Cross-check the effective-rank containment before drawing the window.
        std::vector<double> topL(target.lambdas.begin(),
                                 target.lambdas.begin() + static_cast<long>(L));
        const double r_WL = effective_rank(topL);
        const double bound = effective_rank_window_bound(target.lambdas, r_WL, p);
        jv["containment"] = window_containment(res.trajectory, r_WL, bound, v.T0, v.T1);
        if (jv["containment"]["contained"].get<bool>()) {
          SvgWindow w;
          w.label = "L=" + std::to_string(L);
          w.x0 = v.T0;
          w.x1 = v.T1;
          res.certified_windows.push_back(w);
        }
      }
      sweep_entry["verdicts"].push_back(jv);
    }
    report["sweep"].push_back(sweep_entry);
    results.push_back(std::move(res));
  }

  const fs::path dir = resolve_out_dir(config);
  std::vector<std::string> outputs;
  if (config.emit_csv) {
    emit_csv(trajectory_table(results, config.spectrum.n), (dir / "observe.csv").string());
    outputs.push_back("observe.csv");
  }
  if (config.emit_svg) {
    SvgPlot plot;
    plot.title = "Effective rank of W(k)";
    plot.y_label = "effective rank";
    plot.log_x = config.log_x;
    const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};
    for (std::size_t i = 0; i < results.size(); ++i) {
      SvgSeries s;
      s.label = results[i].id;
      s.color = colors[i % 4];
      for (const TrajectoryRecord& rec : results[i].trajectory) {
        s.x.push_back(static_cast<double>(rec.k));
        s.y.push_back(rec.eff_rank);
      }
      plot.series.push_back(std::move(s));
    }
    if (results.size() == 1) plot.windows = results[0].certified_windows;
    emit_svg(plot, (dir / "observe.svg").string());
    outputs.push_back("observe.svg");
  }
  if (config.emit_report) {
    std::ofstream os(dir / "observe_report.json");
    if (!os) throw IoError("run_observability: cannot write report");
    os << report.dump(2) << "\n";
    outputs.push_back("observe_report.json");
  }
  write_manifest(config, outputs);
  return report;
}

namespace {

// Everything a perturbed run needs, derived once per (level, seed).
struct NoiseRun {
  double c = 0.0;
  double sigma = 0.0;
  std::uint64_t seed = 0;
  PerturbedProblem problem;
  std::vector<TrajectoryRecord> trajectory;  // vs W_tilde, in its eigenbasis
  std::vector<double> frob_err;              // ||W(k) - W_hat||_F per record
};

NoiseRun make_noise_run(const ExperimentConfig& config, const SynthesizedTarget& target,
                        double c, std::uint64_t seed) {
  NoiseRun run;
  run.c = c;
  run.sigma = c / std::sqrt(static_cast<double>(config.spectrum.n));
  run.seed = seed;
  NoiseModel model = config.noise;
  model.sigma = run.sigma;
  model.seed = seed;
  const SymMatrix E = sample_noise(model);
  run.problem = make_perturbed(target.W, E, config.dynamics.alpha, config.dynamics.depth);
  run.trajectory =
      simulate_factors(run.problem.W_tilde, run.problem.decomp_tilde.V, config.dynamics);

  // ||W(k) - W_hat||_F^2 = sum_j (d_j^N)^2 + sum_i lambda_i^2
  //                        - 2 sum_{ij} d_j^N lambda_i <v_i, v~_j>^2.
  const std::size_t n = config.spectrum.n;
  const Matrix o = overlap_squared(target.V, run.problem.decomp_tilde.V);
  double lam_sq = 0.0;
  for (double l : target.lambdas) lam_sq += l * l;
  run.frob_err.reserve(run.trajectory.size());
  for (const TrajectoryRecord& rec : run.trajectory) {
    double dn_sq = 0.0, cross = 0.0;
    std::vector<double> dn(n);
    for (std::size_t j = 0; j < n; ++j) {
      double p = 1.0;
      for (std::size_t q = 0; q < config.dynamics.depth; ++q) p *= rec.diag[j];
      dn[j] = p;
      dn_sq += p * p;
    }
    for (std::size_t i = 0; i < n; ++i) {
      double acc = 0.0;
      for (std::size_t j = 0; j < n; ++j) acc += dn[j] * o(i, j);
      cross += target.lambdas[i] * acc;
    }
    run.frob_err.push_back(std::sqrt(std::max(0.0, dn_sq + lam_sq - 2.0 * cross)));
  }
  return run;
}

json stability_entry(const ExperimentConfig& config, const SynthesizedTarget& target,
                     const NoiseRun& run) {
  json entry;
  entry["c"] = run.c;
  entry["sigma"] = run.sigma;
  entry["seed"] = run.seed;
  entry["E_norm"] = run.problem.E_norm;
  NoiseModel model = config.noise;
  model.sigma = run.sigma;
  entry["E_norm_envelope"] = e_norm_bound(model);
  entry["lambdas_tilde"] = run.problem.decomp_tilde.lambdas;

  const std::vector<double>& lt = run.problem.decomp_tilde.lambdas;
  std::vector<double> lt_plus(lt.size());
  for (std::size_t i = 0; i < lt.size(); ++i) lt_plus[i] = std::max(lt[i], 0.0);

  entry["ranks"] = json::array();
  for (std::size_t L : config.ranks) {
    const WindowParams p = params_for_rank(config, L);
    json r;
    r["L"] = L;

    // Noiseless and perturbed windows.
    json windows;
    bool have_windows = false;
    double Tt0 = 0.0, Tt1 = 0.0;
    try {
      const auto [a, b] = perturbed_window(lt_plus, p);
      Tt0 = a;
      Tt1 = b;
      std::vector<double> leading(target.lambdas.begin(),
                                  target.lambdas.begin() + static_cast<long>(L));
      windows["T0"] = t0(leading, p);
      windows["T1"] = t1(target.lambdas[L], p);
      windows["T0_tilde"] = Tt0;
      windows["T1_tilde"] = Tt1;
      have_windows = true;
    } catch (const Error& ex) {
      windows["error"] = ex.what();
    }
    r["windows"] = windows;

    // Interval-shift bounds.
    json shifts;
    try {
      shifts["t1_bound"] = t1_shift_bound(target.lambdas[L], run.problem.E_norm, p);
      shifts["t0_bound"] = t0_shift_bound(target.lambdas[L], run.problem.E_norm, p);
      shifts["hypothesis_ok"] = true;
      if (have_windows) {
        shifts["t1_shift"] = std::abs(Tt1 - windows["T1"].get<double>());
        shifts["t0_shift"] = std::abs(Tt0 - windows["T0"].get<double>());
      }
    } catch (const Error& ex) {
      shifts["hypothesis_ok"] = false;
      shifts["error"] = ex.what();
    }
    r["shift"] = shifts;

    // Effective-rank stability.
    const EffRankBound erb = effective_rank_stability_bound(run.problem, p);
    json eff;
    eff["bound"] = erb.full;
    eff["bound_simplified"] = erb.simplified;
    eff["hypothesis_ok"] = erb.hypothesis_ok;
    eff["violations"] = erb.violations;
    if (have_windows) {
      std::vector<double> topL(target.lambdas.begin(),
                               target.lambdas.begin() + static_cast<long>(L));
      const double r_WL = effective_rank(topL);
      eff["containment"] = window_containment(run.trajectory, r_WL, erb.full, Tt0, Tt1);
    }
    r["effective_rank"] = eff;

    // Approximation-error bound vs measured ||W(k)_L - W_hat_L||_F.
    json approx;
    try {
      const double bound = approx_error_bound(run.problem, L, p);
      approx["bound"] = bound;
      if (have_windows) {
        // ||W(k)_L - W_hat_L||_F^2 from the overlap table; top-L channels by
        // |d^N| form W(k)_L.
        const std::size_t n = config.spectrum.n;
        const Matrix o = overlap_squared(target.V, run.problem.decomp_tilde.V);
        double lamL_sq = 0.0;
        for (std::size_t i = 0; i < L; ++i) lamL_sq += target.lambdas[i] * target.lambdas[i];
        double max_err = 0.0;
        long checked = 0;
        for (const TrajectoryRecord& rec : run.trajectory) {
          if (rec.k < std::ceil(Tt0) || rec.k > std::floor(Tt1)) continue;
          std::vector<double> dn(n);
          for (std::size_t j = 0; j < n; ++j) {
            double pv = 1.0;
            for (std::size_t q = 0; q < config.dynamics.depth; ++q) pv *= rec.diag[j];
            dn[j] = pv;
          }
          std::vector<std::size_t> order(n);
          for (std::size_t j = 0; j < n; ++j) order[j] = j;
          std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return std::abs(dn[a]) > std::abs(dn[b]);
          });
          double dn_sq = 0.0, cross = 0.0;
          for (std::size_t t = 0; t < L; ++t) {
            const std::size_t j = order[t];
            dn_sq += dn[j] * dn[j];
            for (std::size_t i = 0; i < L; ++i) cross += target.lambdas[i] * dn[j] * o(i, j);
          }
          max_err = std::max(max_err, std::sqrt(std::max(0.0, dn_sq + lamL_sq - 2.0 * cross)));
          ++checked;
        }
        approx["max_measured"] = max_err;
        approx["points_checked"] = checked;
        approx["contained"] = checked > 0 && max_err <= bound;
      }
    } catch (const Error& ex) {
      approx["error"] = ex.what();
    }
    r["approx_error"] = approx;
    entry["ranks"].push_back(r);
  }

  entry["terminal_frob_err"] = run.frob_err.empty() ? 0.0 : run.frob_err.back();
  return entry;
}

}  // namespace

json run_noise_sweep(const ExperimentConfig& config) {
  if (config.noise_levels.empty()) throw InputError("run_noise_sweep: no noise levels configured");
  const SynthesizedTarget target = synthesize(config.spectrum);

  json report;
  report["mode"] = "noise";
  report["levels"] = json::array();

  CsvTable err_table, rank_table;
  err_table.header = {"level", "k", "frob_err"};
  rank_table.header = {"level", "k", "eff_rank"};

  // Primary rank for the plateau-exit diagnostics: the middle configured rank.
  const std::size_t L_mid = config.ranks[config.ranks.size() / 2];
  std::vector<double> terminal_errs, exit_T1s;
  std::vector<bool> lam_moved_up;
  std::vector<NoiseRun> drawn_runs;  // rep-0 run per level, reused for the figures

  for (std::size_t li = 0; li < config.noise_levels.size(); ++li) {
    const double c = config.noise_levels[li];
    for (std::size_t rep = 0; rep < std::max<std::size_t>(config.seeds, 1); ++rep) {
      // Same seed across levels so E scales monotonically with sigma.
      NoiseRun run = make_noise_run(config, target, c, config.seed + rep);
      json entry = stability_entry(config, target, run);
      entry["rep"] = rep;
      report["levels"].push_back(entry);

      if (rep == 0) {
        const std::string level_id = format_double(c);
        for (std::size_t i = 0; i < run.trajectory.size(); ++i) {
          const TrajectoryRecord& rec = run.trajectory[i];
          err_table.rows.push_back({level_id, std::to_string(rec.k),
                                    format_double(run.frob_err[i])});
          rank_table.rows.push_back({level_id, std::to_string(rec.k),
                                     format_double(rec.eff_rank)});
        }
        terminal_errs.push_back(run.frob_err.back());
        const WindowParams p = params_for_rank(config, L_mid);
        double exit_t1 = 0.0;
        try {
          std::vector<double> lt_plus;
          for (double l : run.problem.decomp_tilde.lambdas) lt_plus.push_back(std::max(l, 0.0));
          exit_t1 = perturbed_window(lt_plus, p).second;
        } catch (const Error&) {
          exit_t1 = std::nan("");
        }
        exit_T1s.push_back(exit_t1);
        lam_moved_up.push_back(L_mid < run.problem.decomp_tilde.lambdas.size() &&
                               run.problem.decomp_tilde.lambdas[L_mid] > target.lambdas[L_mid]);
        drawn_runs.push_back(std::move(run));
      }
    }
  }

  // Fig. 2 qualitative diagnostics on the drawn (rep 0) seeds.
  json qual;
  qual["terminal_frob_err"] = terminal_errs;
  qual["rank_mid"] = L_mid;
  qual["T1_tilde"] = exit_T1s;
  qual["lambda_next_moved_up"] = lam_moved_up;
  json flags = json::array();
  for (std::size_t i = 0; i < lam_moved_up.size(); ++i)
    if (config.noise_levels[i] > 0.0 && !lam_moved_up[i])
      flags.push_back("level c=" + format_double(config.noise_levels[i]) +
                      ": lambda_{L+1} moved down; T1 shift direction not comparable");
  qual["flags"] = flags;
  report["qualitative"] = qual;

  const fs::path dir = resolve_out_dir(config);
  std::vector<std::string> outputs;
  if (config.emit_csv) {
    emit_csv(err_table, (dir / "noise_error.csv").string());
    emit_csv(rank_table, (dir / "noise_effrank.csv").string());
    outputs.push_back("noise_error.csv");
    outputs.push_back("noise_effrank.csv");
  }
  if (config.emit_svg) {
    const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#8c564b"};
    SvgPlot err_plot, rank_plot;
    err_plot.title = "Approximation error vs iteration";
    err_plot.y_label = "||W(k) - W_hat||_F";
    err_plot.log_x = config.log_x;
    rank_plot.title = "Effective rank vs iteration (perturbed)";
    rank_plot.y_label = "effective rank";
    rank_plot.log_x = config.log_x;
    std::size_t color_idx = 0;
    for (const NoiseRun& run : drawn_runs) {
      SvgSeries se, sr;
      se.label = sr.label = "c=" + format_double(run.c);
      se.color = sr.color = colors[color_idx % 5];
      ++color_idx;
      for (std::size_t i = 0; i < run.trajectory.size(); ++i) {
        se.x.push_back(static_cast<double>(run.trajectory[i].k));
        se.y.push_back(run.frob_err[i]);
        sr.x.push_back(static_cast<double>(run.trajectory[i].k));
        sr.y.push_back(run.trajectory[i].eff_rank);
      }
      err_plot.series.push_back(std::move(se));
      rank_plot.series.push_back(std::move(sr));
    }
    emit_svg(err_plot, (dir / "noise_error.svg").string());
    emit_svg(rank_plot, (dir / "noise_effrank.svg").string());
    outputs.push_back("noise_error.svg");
    outputs.push_back("noise_effrank.svg");
  }
  if (config.emit_report) {
    std::ofstream os(dir / "noise_report.json");
    if (!os) throw IoError("run_noise_sweep: cannot write report");
    os << report.dump(2) << "\n";
    outputs.push_back("noise_report.json");
  }
  write_manifest(config, outputs);

  if (config.strict) {
    for (const json& entry : report["levels"])
      for (const json& r : entry["ranks"])
        if (r.contains("effective_rank") && !r["effective_rank"]["hypothesis_ok"].get<bool>())
          throw OutOfRegimeError("run_noise_sweep: hypotheses violated in strict mode");
  }
  return report;
}

json bounds_report(const ExperimentConfig& config) {
  const SynthesizedTarget target = synthesize(config.spectrum);
  json report;
  report["mode"] = "bounds";
  report["levels"] = json::array();

  for (const double c : config.noise_levels) {
    for (std::size_t rep = 0; rep < std::max<std::size_t>(config.seeds, 1); ++rep) {
      const NoiseRun run = make_noise_run(config, target, c, config.seed + rep);
      json entry = stability_entry(config, target, run);
      entry["rep"] = rep;

      // Weyl containment per eigenvalue index.
      bool weyl_ok = true;
      for (std::size_t i = 0; i < target.lambdas.size(); ++i)
        weyl_ok = weyl_ok && weyl_gap(target.lambdas[i], run.problem.decomp_tilde.lambdas[i],
                                      run.problem.E_norm);
      entry["weyl_ok"] = weyl_ok;

      // Davis-Kahan / eigenvector distance when the gap hypothesis holds.
      json dk;
      const double delta_s = run.problem.decomp_hat.delta_s;
      dk["delta_s"] = delta_s;
      if (delta_s > 0.0 && run.problem.E_norm <= delta_s / 2.0) {
        double max_sin = 0.0, max_dist = 0.0;
        for (std::size_t i = 0; i < target.lambdas.size(); ++i) {
          const Vector v = run.problem.decomp_hat.eigenvector(i);
          const Vector vt = run.problem.decomp_tilde.eigenvector(i);
          max_sin = std::max(max_sin, davis_kahan_sin(v, vt));
          max_dist = std::max(max_dist, eigvec_distance(v, vt));
        }
        dk["hypothesis_ok"] = true;
        dk["max_sin"] = max_sin;
        dk["sin_bound"] = 2.0 * run.problem.E_norm / delta_s;
        dk["max_distance"] = max_dist;
        dk["distance_bound"] = eigvec_distance_bound(run.problem.E_norm, delta_s);
        dk["contained"] = max_sin <= dk["sin_bound"].get<double>() &&
                          max_dist <= dk["distance_bound"].get<double>();
      } else {
        dk["hypothesis_ok"] = false;
      }
      entry["davis_kahan"] = dk;

      report["levels"].push_back(entry);
    }
  }

  const fs::path dir = resolve_out_dir(config);
  std::vector<std::string> outputs;
  if (config.emit_report) {
    std::ofstream os(dir / "bounds_report.json");
    if (!os) throw IoError("bounds_report: cannot write report");
    os << report.dump(2) << "\n";
    outputs.push_back("bounds_report.json");
  }
  write_manifest(config, outputs);
  return report;
}

std::string sha256_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("sha256_file: cannot open " + path);
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  if (!ctx) throw IoError("sha256_file: EVP context allocation failed");
  EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
  char buf[65536];
  while (is) {
    is.read(buf, sizeof(buf));
    const std::streamsize got = is.gcount();
    if (got > 0) EVP_DigestUpdate(ctx, buf, static_cast<std::size_t>(got));
  }
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx, digest, &len);
  EVP_MD_CTX_free(ctx);
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 0xF];
  }
  return out;
}

void write_manifest(const ExperimentConfig& config, const std::vector<std::string>& outputs) {
  const fs::path dir = resolve_out_dir(config);
  json m;
  const std::string config_dump = config.to_json().dump();
  // Hash the canonical config serialization via a temp file-free digest.
  {
    EVP_MD_CTX* ctx = EVP_MD_CTX_new();
    EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
    EVP_DigestUpdate(ctx, config_dump.data(), config_dump.size());
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_DigestFinal_ex(ctx, digest, &len);
    EVP_MD_CTX_free(ctx);
    static const char* hex = "0123456789abcdef";
    std::string h;
    for (unsigned int i = 0; i < len; ++i) {
      h += hex[digest[i] >> 4];
      h += hex[digest[i] & 0xF];
    }
    m["config_sha256"] = h;
  }
  m["seed"] = config.seed;
  m["seeds"] = config.seeds;
  m["basis_seed"] = config.spectrum.basis_seed;
  m["tool_version"] = "irlab 1.0.0";
  m["timestamp_utc"] = []() {
    std::time_t t = std::time(nullptr);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return std::string(buf);
  }();
  m["outputs"] = json::object();
  for (const std::string& rel : outputs)
    m["outputs"][rel] = sha256_file((dir / rel).string());
  std::ofstream os(dir / "manifest.json");
  if (!os) throw IoError("write_manifest: cannot write manifest");
  os << m.dump(2) << "\n";
}

}  // namespace irlab
