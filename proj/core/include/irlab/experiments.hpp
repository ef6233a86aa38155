#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "irlab/dynamics.hpp"
#include "irlab/noise.hpp"
#include "irlab/spectrum.hpp"
#include "irlab/timing.hpp"

namespace irlab {

using json = nlohmann::ordered_json;

// One JSON document drives the whole pipeline; every field has a default so
// an empty config reproduces the baseline observability figure.
struct ExperimentConfig {
  SpectrumSpec spectrum;                 // lambda = (10, 5, 1) + 0.01 tail, n = 20
  DynamicsConfig dynamics;               // N = 2, eta = 0.005, alpha = 0.01
  WindowParams window;                   // eps = 0.05, eps' = 0.1
  std::vector<std::size_t> ranks = {1, 2, 3};
  std::vector<double> eta_sweep;         // observe: one sweep point per eta; empty = {dynamics.eta}
  std::vector<double> noise_levels = {0.0, 0.05, 0.1, 0.2};  // c values, sigma = c/sqrt(n)
  NoiseModel noise;                      // seed base + delta' for the noise sweep
  std::uint64_t seed = 1;
  std::size_t seeds = 1;                 // Monte-Carlo repetitions per noise level
  std::string out_dir = "out";
  bool emit_csv = true;
  bool emit_svg = true;
  bool emit_report = true;
  bool log_x = true;
  bool strict = false;                   // out-of-regime becomes an error

  // max_iters default: 5 * ceil(max over configured ranks of T1).
  long default_max_iters() const;

  static ExperimentConfig from_json(const json& j);
  static ExperimentConfig from_file(const std::string& path);
  json to_json() const;
};

// Window calculus walkthrough: K_eps, per-pair gaps, alpha*/eta*, T0/T1 and
// the verdict per configured rank. Also printed as a table on stdout.
json certify(const ExperimentConfig& config);

// Noiseless effective-rank trajectories per sweep point with certified
// windows overlaid; emits CSV/SVG/report into config.out_dir.
json run_observability(const ExperimentConfig& config);

// Perturbed runs per noise level: approximation error and effective rank
// trajectories, window shifts, and all stability bounds.
json run_noise_sweep(const ExperimentConfig& config);

// StabilityReport only (no trajectory emission beyond the report JSON).
json bounds_report(const ExperimentConfig& config);

// SHA-256 of a file's bytes, lowercase hex.
std::string sha256_file(const std::string& path);

// Writes <out_dir>/manifest.json with config hash, seeds, and per-output
// checksums. `outputs` are paths relative to out_dir.
void write_manifest(const ExperimentConfig& config, const std::vector<std::string>& outputs);

}  // namespace irlab
