#include "zeno/cli.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <set>
#include <thread>
#include <vector>

#include "json.hpp"
#include "zeno/format.hpp"
#include "zeno/scenarios.hpp"

#ifndef ZENOSIM_VERSION
#define ZENOSIM_VERSION "0.0.0"
#endif

namespace zeno::cli {

using json = nlohmann::ordered_json;
using scenarios::ExperimentResult;

namespace {

// ---------------------------------------------------------------------------
// config parsing
// ---------------------------------------------------------------------------

[[noreturn]] void config_error(const std::string& message) { throw ConfigInvalid(message); }

void require_keys(const json& j, const std::set<std::string>& allowed) {
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (!allowed.count(key)) config_error("unknown config field '" + key + "'");
  }
}

double get_number(const json& j, const std::string& key, double fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number()) config_error("field '" + key + "' must be a number");
  return j.at(key).get<double>();
}

int get_int(const json& j, const std::string& key, int fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number_integer()) config_error("field '" + key + "' must be an integer");
  return j.at(key).get<int>();
}

bool get_bool(const json& j, const std::string& key, bool fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_boolean()) config_error("field '" + key + "' must be a boolean");
  return j.at(key).get<bool>();
}

qalg::ComplexMatrix parse_matrix(const json& rows, const std::string& key) {
  if (!rows.is_array() || rows.empty()) config_error("field '" + key + "' must be a matrix");
  const int dim = static_cast<int>(rows.size());
  qalg::ComplexMatrix m(dim);
  for (int r = 0; r < dim; ++r) {
    if (!rows[r].is_array() || static_cast<int>(rows[r].size()) != dim) {
      config_error("field '" + key + "' must be a square matrix");
    }
    for (int c = 0; c < dim; ++c) {
      const json& cell = rows[r][c];
      if (cell.is_number()) {
        m.at(r, c) = cell.get<double>();
      } else if (cell.is_array() && cell.size() == 2 && cell[0].is_number() &&
                 cell[1].is_number()) {
        m.at(r, c) = {cell[0].get<double>(), cell[1].get<double>()};
      } else {
        config_error("field '" + key + "' entries must be numbers or [re, im] pairs");
      }
    }
  }
  return m;
}

struct ScenarioRun {
  std::string name;
  scenarios::DriveConfig drive;
  double eta = 1.0;
  qalg::ComplexMatrix kick;
  scenarios::ReservoirConfig reservoir;
  scenarios::SubspaceConfig subspace;
};

void parse_drive_common(const json& j, scenarios::DriveConfig& cfg) {
  cfg.omega_rf = get_number(j, "omega_rf", 1.0);
  cfg.total_time = get_number(j, "total_time", -1.0);
  cfg.pulse_count = get_int(j, "pulse_count", 0);
  cfg.init_level = get_int(j, "init_level", 1);
}

void parse_drive_full_extras(const json& j, scenarios::DriveConfig& cfg) {
  cfg.omega_laser = get_number(j, "omega_laser", -1.0);
  cfg.laser_pulse_duration = get_number(j, "laser_pulse_duration", -1.0);
  cfg.gamma3 = get_number(j, "gamma3", -1.0);
  cfg.rf_on_during_laser = get_bool(j, "rf_on_during_laser", true);
  cfg.integrator_steps = get_int(j, "integrator_steps", 5000);
  cfg.trace_drift_limit = get_number(j, "trace_drift_limit", tol::trace_drift_limit);
}

ScenarioRun parse_scenario(const json& j) {
  if (!j.is_object()) config_error("config document must be a JSON object");
  if (!j.contains("scenario") || !j.at("scenario").is_string()) {
    config_error("field 'scenario' (string) is required");
  }
  ScenarioRun run;
  run.name = j.at("scenario").get<std::string>();

  const std::set<std::string> drive_keys = {"scenario", "sweep",      "omega_rf",
                                           "total_time", "pulse_count", "init_level"};
  std::set<std::string> full_keys = drive_keys;
  full_keys.insert({"omega_laser", "laser_pulse_duration", "gamma3", "rf_on_during_laser",
                    "integrator_steps", "trace_drift_limit"});

  if (run.name == "drive_ideal" || run.name == "drive_reversed") {
    require_keys(j, drive_keys);
    parse_drive_common(j, run.drive);
    if (run.name == "drive_reversed") run.drive.init_level = 2;
  } else if (run.name == "drive_full") {
    require_keys(j, full_keys);
    parse_drive_common(j, run.drive);
    run.drive.mode = scenarios::DriveMode::Full;
    parse_drive_full_extras(j, run.drive);
  } else if (run.name == "drive_partial") {
    std::set<std::string> keys = drive_keys;
    keys.insert("eta");
    require_keys(j, keys);
    parse_drive_common(j, run.drive);
    if (!j.contains("eta")) config_error("field 'eta' is required for drive_partial");
    run.eta = get_number(j, "eta", 0.0);
  } else if (run.name == "drive_bangbang") {
    std::set<std::string> keys = drive_keys;
    keys.insert({"kick", "kick_matrix"});
    require_keys(j, keys);
    parse_drive_common(j, run.drive);
    if (j.contains("kick_matrix")) {
      run.kick = parse_matrix(j.at("kick_matrix"), "kick_matrix");
    } else {
      const std::string kick = j.contains("kick") && j.at("kick").is_string()
                                   ? j.at("kick").get<std::string>()
                                   : "sigma_z";
      if (kick == "sigma_z") {
        run.kick = qalg::ComplexMatrix::from_rows({{1.0, 0.0}, {0.0, -1.0}});
      } else if (kick == "sigma_x") {
        run.kick = qalg::ComplexMatrix::from_rows({{0.0, 1.0}, {1.0, 0.0}});
      } else if (kick == "identity") {
        run.kick = qalg::ComplexMatrix::identity(2);
      } else {
        config_error("field 'kick' must be one of sigma_z, sigma_x, identity");
      }
    }
  } else if (run.name == "unstable_reservoir") {
    require_keys(j, {"scenario", "sweep", "mode_count", "band_center", "band_width",
                     "coupling", "measurement_interval", "measurement_count"});
    run.reservoir.mode_count = get_int(j, "mode_count", 64);
    run.reservoir.band_center = get_number(j, "band_center", 0.0);
    run.reservoir.band_width = get_number(j, "band_width", 4.0);
    run.reservoir.coupling = get_number(j, "coupling", 0.05);
    run.reservoir.measurement_interval = get_number(j, "measurement_interval", 0.2);
    run.reservoir.measurement_count = get_int(j, "measurement_count", 20);
  } else if (run.name == "zeno_subspace") {
    require_keys(j, {"scenario", "sweep", "hamiltonian", "chain_couplings", "subspace",
                     "pulse_count", "total_time"});
    if (j.contains("hamiltonian")) {
      run.subspace.hamiltonian = parse_matrix(j.at("hamiltonian"), "hamiltonian");
    } else if (j.contains("chain_couplings")) {
      const json& couplings = j.at("chain_couplings");
      if (!couplings.is_array() || couplings.empty()) {
        config_error("field 'chain_couplings' must be a nonempty array");
      }
      const int dim = static_cast<int>(couplings.size()) + 1;
      qalg::ComplexMatrix h(dim);
      for (int i = 0; i + 1 < dim; ++i) {
        if (!couplings[i].is_number()) {
          config_error("field 'chain_couplings' entries must be numbers");
        }
        const double c = couplings[i].get<double>();
        h.at(i, i + 1) = 0.5 * c;
        h.at(i + 1, i) = 0.5 * c;
      }
      run.subspace.hamiltonian = h;
    } else {
      config_error("zeno_subspace requires 'hamiltonian' or 'chain_couplings'");
    }
    if (!j.contains("subspace") || !j.at("subspace").is_array()) {
      config_error("field 'subspace' (array of level indices) is required");
    }
    for (const json& index : j.at("subspace")) {
      if (!index.is_number_integer()) config_error("field 'subspace' must hold integers");
      run.subspace.subspace.push_back(index.get<int>());
    }
    run.subspace.pulse_count = get_int(j, "pulse_count", 0);
    run.subspace.total_time = get_number(j, "total_time", 1.0);
  } else {
    config_error("unknown scenario '" + run.name + "'");
  }
  return run;
}

ExperimentResult execute(const ScenarioRun& run, const CliOptions& options) {
  ScenarioRun r = run;
  if (options.steps) r.drive.integrator_steps = *options.steps;

  ExperimentResult result;
  if (r.name == "drive_ideal") {
    result = scenarios::run_drive_ideal(r.drive);
  } else if (r.name == "drive_reversed") {
    result = scenarios::run_reversed(r.drive);
  } else if (r.name == "drive_full") {
    result = scenarios::run_drive_full(r.drive);
  } else if (r.name == "drive_partial") {
    result = scenarios::run_partial(r.drive, {r.eta});
  } else if (r.name == "drive_bangbang") {
    result = scenarios::run_bangbang(r.drive, {r.kick});
  } else if (r.name == "unstable_reservoir") {
    result = scenarios::run_unstable(r.reservoir);
  } else {
    result = scenarios::run_zeno_subspace(r.subspace);
  }
  if (options.seed) result.rng_seed = *options.seed;
  return result;
}

// validation-only pass used to map config problems to exit code 2 before any
// simulation starts
void prevalidate(const ScenarioRun& run, const CliOptions& options) {
  ScenarioRun r = run;
  if (options.steps) r.drive.integrator_steps = *options.steps;
  if (r.name == "drive_ideal") {
    const scenarios::DriveConfig cfg = r.drive.resolved();
    cfg.validate();
    if (cfg.init_level != 1) config_error("drive_ideal: init_level must be 1");
  } else if (r.name == "drive_reversed" || r.name == "drive_full") {
    r.drive.resolved().validate();
  } else if (r.name == "drive_partial") {
    r.drive.resolved().validate();
    if (!(r.eta >= 0.0 && r.eta <= 1.0)) config_error("field 'eta' must lie in [0, 1]");
  } else if (r.name == "drive_bangbang") {
    r.drive.resolved().validate();
    if (r.kick.dim() != 2 || !r.kick.is_unitary(tol::unitary)) {
      config_error("field 'kick'/'kick_matrix' must be a 2x2 unitary");
    }
  } else if (r.name == "unstable_reservoir") {
    r.reservoir.validate();
  } else {
    r.subspace.validate();
  }
}

// ---------------------------------------------------------------------------
// artifact writing
// ---------------------------------------------------------------------------

json result_to_json(const ExperimentResult& result, const std::string& scenario) {
  json out;
  out["scenario"] = scenario;
  json config = json::object();
  for (const auto& [key, value] : result.config_echo) config[key] = value;
  out["config"] = config;
  if (result.rng_seed) out["seed"] = *result.rng_seed;
  out["time_grid"] = result.time_grid;
  out["level_labels"] = result.level_labels;
  json populations = json::object();
  for (size_t level = 0; level < result.populations.size(); ++level) {
    populations["p" + std::to_string(level + 1)] = result.populations[level];
  }
  out["populations"] = populations;
  json series = json::object();
  series["trace"] = result.trace_series;
  series["purity"] = result.purity_series;
  out["series"] = series;
  if (!result.reference_populations.empty()) {
    json reference = json::object();
    for (size_t level = 0; level < result.reference_populations.size(); ++level) {
      reference["p" + std::to_string(level + 1)] = result.reference_populations[level];
    }
    out["reference_populations"] = reference;
  }
  json summary = json::object();
  for (const auto& [key, value] : result.summary) summary[key] = value;
  out["summary"] = summary;
  out["diagnostics"] = {{"max_trace_drift", result.diagnostics.max_trace_drift},
                        {"min_eigenvalue", result.diagnostics.min_eigenvalue}};
  out["warnings"] = result.warnings;
  return out;
}

std::string series_csv(const ExperimentResult& result) {
  std::string out = "t,p1,p2,p3,trace,purity\n";
  const size_t points = result.time_grid.size();
  for (size_t i = 0; i < points; ++i) {
    out += format_double(result.time_grid[i]);
    for (size_t level = 0; level < 3; ++level) {
      out += ',';
      out += level < result.populations.size() ? format_double(result.populations[level][i])
                                               : "0";
    }
    out += ',';
    out += format_double(result.trace_series[i]);
    out += ',';
    out += format_double(result.purity_series[i]);
    out += '\n';
  }
  return out;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream stream(path, std::ios::binary);
  if (!stream) throw ZenoError("cannot open output file " + path.string());
  stream << content;
  if (!stream) throw ZenoError("failed writing output file " + path.string());
}

class ManifestWriter {
 public:
  ManifestWriter(std::string command, std::filesystem::path out_dir)
      : command_(std::move(command)),
        out_dir_(std::move(out_dir)),
        started_(std::chrono::steady_clock::now()) {
    std::filesystem::create_directories(out_dir_);
  }

  void set_config_echo(json echo) { config_echo_ = std::move(echo); }

  void emit(const std::string& name, const std::string& content) {
    write_file(out_dir_ / name, content);
    outputs_.push_back(name);
  }

  void finalize() {
    json manifest;
    manifest["tool_version"] = tool_version();
    manifest["command"] = command_;
    manifest["config_echo"] = config_echo_;
    manifest["outputs"] = outputs_;
    manifest["wall_time"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started_).count();
    write_file(out_dir_ / "manifest.json", manifest.dump(2) + "\n");
  }

 private:
  std::string command_;
  std::filesystem::path out_dir_;
  std::chrono::steady_clock::time_point started_;
  json config_echo_ = json::object();
  std::vector<std::string> outputs_;
};

json load_config(const std::string& path) {
  std::ifstream stream(path);
  if (!stream) config_error("cannot open config file " + path);
  try {
    return json::parse(stream);
  } catch (const nlohmann::json::parse_error& e) {
    config_error(std::string("config parse error: ") + e.what());
  }
}

int failure_code(const ZenoError& e) {
  if (dynamic_cast<const ConfigInvalid*>(&e)) return 2;
  return 3;
}

}  // namespace

std::string tool_version() { return ZENOSIM_VERSION; }

int cmd_run(const std::string& config_path, const std::string& out_dir,
            const std::string& format, const CliOptions& options) {
  std::string scenario_name = "?";
  try {
    if (format != "json" && format != "csv") {
      config_error("format must be 'json' or 'csv'");
    }
    const json config = load_config(config_path);
    if (config.contains("sweep")) {
      config_error("config declares a sweep; use the sweep command");
    }
    const ScenarioRun run = parse_scenario(config);
    scenario_name = run.name;
    prevalidate(run, options);

    ManifestWriter manifest("run " + config_path + " --format " + format, out_dir);
    const ExperimentResult result = execute(run, options);
    const json result_json = result_to_json(result, run.name);
    // the manifest echoes the input document verbatim: feeding it back
    // reproduces the run
    manifest.set_config_echo(config);
    manifest.emit("result_" + run.name + ".json", result_json.dump(2) + "\n");
    if (format == "csv") {
      manifest.emit("series_" + run.name + ".csv", series_csv(result));
    }
    manifest.finalize();
    return 0;
  } catch (const ZenoError& e) {
    const int code = failure_code(e);
    std::cerr << "zenosim run: " << (code == 2 ? "config error" : "simulation error") << " in '"
              << scenario_name << "': " << e.what() << "\n";
    return code;
  } catch (const std::exception& e) {
    std::cerr << "zenosim run: error: " << e.what() << "\n";
    return 3;
  }
}

int cmd_sweep(const std::string& config_path, const std::string& out_dir,
              const CliOptions& options) {
  std::string scenario_name = "?";
  try {
    const json config = load_config(config_path);
    if (!config.contains("sweep") || !config.at("sweep").is_object()) {
      config_error("sweep config requires a 'sweep' object");
    }
    const json& sweep = config.at("sweep");
    for (const auto& [key, value] : sweep.items()) {
      (void)value;
      if (key != "parameter" && key != "values") {
        config_error("unknown sweep field '" + key + "'");
      }
    }
    if (!sweep.contains("parameter") || !sweep.at("parameter").is_string()) {
      config_error("sweep field 'parameter' (string) is required");
    }
    if (!sweep.contains("values") || !sweep.at("values").is_array() ||
        sweep.at("values").empty()) {
      config_error("sweep field 'values' must be a nonempty array");
    }
    const std::string parameter = sweep.at("parameter").get<std::string>();
    const json values = sweep.at("values");

    // materialize one config per value and validate everything up front
    std::vector<ScenarioRun> runs;
    for (const json& value : values) {
      json document = config;
      document.erase("sweep");
      document[parameter] = value;
      const ScenarioRun run = parse_scenario(document);
      prevalidate(run, options);
      runs.push_back(run);
    }
    scenario_name = runs.front().name;

    // execute (optionally in parallel); order of results is fixed by index
    std::vector<ExperimentResult> results(runs.size());
    const int hardware = static_cast<int>(std::thread::hardware_concurrency());
    const int jobs = options.jobs > 0 ? options.jobs : std::max(1, hardware);
    if (jobs <= 1 || runs.size() == 1) {
      for (size_t i = 0; i < runs.size(); ++i) results[i] = execute(runs[i], options);
    } else {
      std::vector<std::future<ExperimentResult>> futures;
      futures.reserve(runs.size());
      for (size_t i = 0; i < runs.size(); ++i) {
        futures.push_back(std::async(std::launch::async,
                                     [&runs, &options, i] { return execute(runs[i], options); }));
      }
      for (size_t i = 0; i < runs.size(); ++i) results[i] = futures[i].get();
    }

    ManifestWriter manifest("sweep " + config_path, out_dir);
    // verbatim input document (sweep object included): feeding it back
    // reproduces the sweep
    manifest.set_config_echo(config);

    // per-value result files
    for (size_t i = 0; i < results.size(); ++i) {
      const json result_json = result_to_json(results[i], runs[i].name);
      manifest.emit("result_" + runs[i].name + "_" + std::to_string(i) + ".json",
                    result_json.dump(2) + "\n");
    }

    // one summary table over the sweep axis; the axis itself is not repeated
    // as a summary column
    std::string table = parameter;
    for (const auto& [key, value] : results.front().summary) {
      (void)value;
      if (key != parameter) table += "," + key;
    }
    table += '\n';
    for (size_t i = 0; i < results.size(); ++i) {
      table += values[i].is_number_integer()
                   ? std::to_string(values[i].get<long long>())
                   : format_double(values[i].get<double>());
      for (const auto& [key, value] : results[i].summary) {
        if (key != parameter) table += ',' + format_double(value);
      }
      table += '\n';
    }
    manifest.emit("sweep_summary.csv", table);
    manifest.finalize();
    return 0;
  } catch (const ZenoError& e) {
    const int code = failure_code(e);
    std::cerr << "zenosim sweep: " << (code == 2 ? "config error" : "simulation error")
              << " in '" << scenario_name << "': " << e.what() << "\n";
    return code;
  } catch (const std::exception& e) {
    std::cerr << "zenosim sweep: error: " << e.what() << "\n";
    return 3;
  }
}

int cmd_fig4(const std::string& out_dir, const CliOptions& options) {
  try {
    ManifestWriter manifest("fig4", out_dir);
    const std::vector<int> sweep = {1, 2, 4, 8, 16, 32, 64};

    json echo = json::object();
    echo["scenario"] = "fig4";
    echo["pulse_counts"] = sweep;
    manifest.set_config_echo(echo);

    std::string table = "n,simplified,full,no_measurement\n";
    // baseline: uninterrupted pi-pulse
    scenarios::DriveConfig baseline_cfg;
    const double baseline =
        scenarios::run_drive_ideal(baseline_cfg).summary_value("p2_final");

    for (int n : sweep) {
      const double simplified = schedule::zeno_survival_ideal(n);
      scenarios::DriveConfig full_cfg;
      full_cfg.mode = scenarios::DriveMode::Full;
      full_cfg.pulse_count = n;
      if (options.steps) full_cfg.integrator_steps = *options.steps;
      const double full = scenarios::run_drive_full(full_cfg).summary_value("p2_final");
      table += std::to_string(n) + ',' + format_double(simplified) + ',' +
               format_double(full) + ',' + format_double(baseline) + '\n';
    }
    manifest.emit("fig4.csv", table);
    manifest.finalize();
    return 0;
  } catch (const ZenoError& e) {
    std::cerr << "zenosim fig4: simulation error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "zenosim fig4: error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace zeno::cli
