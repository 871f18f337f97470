#pragma once

// Config-driven command-line front end: single scenario runs, one-axis
// parameter sweeps and the canonical simplified-vs-full comparison table.
// Commands are ordinary functions returning the process exit code so the
// test suite can drive them directly; tools/zenosim.cpp is a thin argv
// wrapper.
//
// Exit codes: 0 success, 2 config parse/validation error, 3 simulation error.

#include <cstdint>
#include <optional>
#include <string>

namespace zeno::cli {

struct CliOptions {
  std::optional<uint64_t> seed;  // echoed into result artifacts
  std::optional<int> steps;      // overrides the base integrator step count
  int jobs = 0;                  // sweep parallelism; 0 = hardware, 1 = serial
};

std::string tool_version();

// Runs the single scenario described by the config file. Writes
// result_<scenario>.json (always) plus series_<scenario>.csv when format is
// "csv", and manifest.json.
int cmd_run(const std::string& config_path, const std::string& out_dir,
            const std::string& format, const CliOptions& options = {});

// Runs the scenario once per value of the declared sweep axis. Writes
// per-value result files, sweep_summary.csv and manifest.json. Parallel
// execution does not change output bytes.
int cmd_sweep(const std::string& config_path, const std::string& out_dir,
              const CliOptions& options = {});

// Canonical comparison table over n in {1, 2, 4, 8, 16, 32, 64}: simplified
// closed form, full model with default strong short pulses, and the
// no-measurement baseline. Writes fig4.csv and manifest.json.
int cmd_fig4(const std::string& out_dir, const CliOptions& options = {});

}  // namespace zeno::cli
