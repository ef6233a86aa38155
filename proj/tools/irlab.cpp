#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "irlab/errors.hpp"
#include "irlab/experiments.hpp"

namespace {

struct CommonOpts {
  std::string config_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  bool seed_set = false;
  std::size_t seeds = 0;
  std::string emit;
  bool log_x = false;
  bool linear_x = false;
  bool strict = false;
};

void add_common(CLI::App* app, CommonOpts& o) {
  app->add_option("--config", o.config_path, "JSON config file");
  app->add_option("--out", o.out_dir, "output directory");
  app->add_option("--seed", o.seed, "base RNG seed")->each([&](const std::string&) {
    o.seed_set = true;
  });
  app->add_option("--seeds", o.seeds, "Monte-Carlo repetitions per sweep point");
  app->add_option("--emit", o.emit, "comma-separated subset of csv,svg,report");
  app->add_flag("--log-x", o.log_x, "logarithmic iteration axis");
  app->add_flag("--linear-x", o.linear_x, "linear iteration axis");
  app->add_flag("--strict", o.strict, "treat violated theorem hypotheses as errors");
}

irlab::ExperimentConfig build_config(const CommonOpts& o) {
  irlab::ExperimentConfig c = o.config_path.empty()
                                  ? irlab::ExperimentConfig::from_json(irlab::json::object())
                                  : irlab::ExperimentConfig::from_file(o.config_path);
  if (!o.out_dir.empty()) c.out_dir = o.out_dir;
  if (const char* env = std::getenv("IRLAB_OUT"); env && *env) c.out_dir = env;
  if (o.seed_set) c.seed = o.seed;
  if (o.seeds > 0) c.seeds = o.seeds;
  if (!o.emit.empty()) {
    c.emit_csv = o.emit.find("csv") != std::string::npos;
    c.emit_svg = o.emit.find("svg") != std::string::npos;
    c.emit_report = o.emit.find("report") != std::string::npos;
  }
  if (o.log_x) c.log_x = true;
  if (o.linear_x) c.log_x = false;
  if (o.strict) c.strict = true;
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"irlab: gradient-descent low-rank window simulator and bound checker"};
  app.require_subcommand(1);

  CommonOpts certify_opts, observe_opts, noise_opts, bounds_opts;
  CLI::App* cmd_certify =
      app.add_subcommand("certify", "window-existence walkthrough for the configured spectrum");
  add_common(cmd_certify, certify_opts);
  CLI::App* cmd_observe =
      app.add_subcommand("observe", "noiseless effective-rank trajectories with windows");
  add_common(cmd_observe, observe_opts);
  CLI::App* cmd_noise =
      app.add_subcommand("noise", "perturbed sweep: approximation error and stability bounds");
  add_common(cmd_noise, noise_opts);
  CLI::App* cmd_bounds = app.add_subcommand("bounds", "stability report only");
  add_common(cmd_bounds, bounds_opts);

  CLI11_PARSE(app, argc, argv);

  try {
    if (cmd_certify->parsed()) {
      irlab::certify(build_config(certify_opts));
    } else if (cmd_observe->parsed()) {
      irlab::run_observability(build_config(observe_opts));
    } else if (cmd_noise->parsed()) {
      irlab::run_noise_sweep(build_config(noise_opts));
    } else if (cmd_bounds->parsed()) {
      irlab::bounds_report(build_config(bounds_opts));
    }
  } catch (const irlab::Error& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return static_cast<int>(ex.code());
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 2;
  }
  return 0;
}
