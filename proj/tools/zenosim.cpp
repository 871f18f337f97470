#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "zeno/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"zenosim: quantum Zeno effect simulations at desk scale"};
  app.set_version_flag("--version", zeno::cli::tool_version());
  app.require_subcommand(1);

  zeno::cli::CliOptions options;
  uint64_t seed = 0;
  int steps = 0;
  bool seed_set = false, steps_set = false;

  app.add_option("--seed", seed, "RNG seed recorded in result artifacts")
      ->each([&](const std::string&) { seed_set = true; });
  app.add_option("--steps", steps, "base integrator step count per segment")
      ->each([&](const std::string&) { steps_set = true; });
  app.add_option("--jobs", options.jobs, "sweep parallelism (1 = serial, 0 = hardware)");

  std::string config_path, out_dir = ".", format = "json";

  CLI::App* run = app.add_subcommand("run", "run a single scenario from a config file");
  run->add_option("config", config_path, "config file (JSON)")->required();
  run->add_option("--out", out_dir, "output directory");
  run->add_option("--format", format, "result format: json or csv")
      ->check(CLI::IsMember({"json", "csv"}));

  CLI::App* sweep = app.add_subcommand("sweep", "run a one-axis parameter sweep");
  sweep->add_option("config", config_path, "config file with a 'sweep' object")->required();
  sweep->add_option("--out", out_dir, "output directory");

  CLI::App* fig4 = app.add_subcommand("fig4", "canonical simplified-vs-full table");
  fig4->add_option("--out", out_dir, "output directory");

  CLI11_PARSE(app, argc, argv);

  if (seed_set) options.seed = seed;
  if (steps_set) options.steps = steps;

  if (run->parsed()) return zeno::cli::cmd_run(config_path, out_dir, format, options);
  if (sweep->parsed()) return zeno::cli::cmd_sweep(config_path, out_dir, options);
  return zeno::cli::cmd_fig4(out_dir, options);
}
