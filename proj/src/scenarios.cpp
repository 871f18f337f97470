#include "zeno/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "zeno/format.hpp"

namespace zeno::scenarios {

using dynamics::DriveSegment;
using dynamics::IntegratorConfig;
using dynamics::JumpOperator;
using measure::CounterRng;
using measure::KickOperator;
using measure::MeasurementStrength;
using measure::ProjectorSet;
using qalg::complexd;
using qalg::ComplexMatrix;
using qalg::DensityMatrix;

namespace {

const double kPi = std::acos(-1.0);

// level indices within the rotating-frame bases
constexpr int kLevel1 = 0;
constexpr int kLevel2 = 1;
constexpr int kLevel3 = 2;

ComplexMatrix rf_hamiltonian(double omega, int dim) {
  ComplexMatrix h(dim);
  h.at(kLevel1, kLevel2) = 0.5 * omega;
  h.at(kLevel2, kLevel1) = 0.5 * omega;
  return h;
}

ComplexMatrix laser_coupling(double omega_laser) {
  ComplexMatrix h(3);
  h.at(kLevel1, kLevel3) = 0.5 * omega_laser;
  h.at(kLevel3, kLevel1) = 0.5 * omega_laser;
  return h;
}

DensityMatrix level_state(int dim, int level_index) {
  return qalg::density_from_state(qalg::StateVector::basis(dim, level_index));
}

// Collects the sampled series and conservation diagnostics of a run.
class Recorder {
 public:
  explicit Recorder(std::vector<std::string> labels) {
    result_.level_labels = std::move(labels);
    result_.populations.resize(result_.level_labels.size());
  }

  void record(double t, const ComplexMatrix& rho) {
    result_.time_grid.push_back(t);
    for (size_t level = 0; level < result_.populations.size(); ++level) {
      result_.populations[level].push_back(rho.at(level, level).real());
    }
    const double trace = rho.trace().real();
    result_.trace_series.push_back(trace);
    const DensityMatrix wrapped{rho};
    result_.purity_series.push_back(wrapped.purity());
    result_.diagnostics.max_trace_drift =
        std::max(result_.diagnostics.max_trace_drift, std::abs(trace - 1.0));
    result_.diagnostics.min_eigenvalue =
        std::min(result_.diagnostics.min_eigenvalue, wrapped.min_eigenvalue());
  }

  ExperimentResult take() { return std::move(result_); }

 private:
  ExperimentResult result_;
};

std::vector<std::string> level_labels(int dim) {
  std::vector<std::string> labels;
  for (int i = 0; i < dim; ++i) labels.push_back("p" + std::to_string(i + 1));
  return labels;
}

void echo(ExperimentResult& result, const std::string& key, const std::string& value) {
  result.config_echo.emplace_back(key, value);
}

void echo(ExperimentResult& result, const std::string& key, double value) {
  result.config_echo.emplace_back(key, format_double(value));
}

void echo(ExperimentResult& result, const std::string& key, int value) {
  result.config_echo.emplace_back(key, std::to_string(value));
}

void echo_drive(ExperimentResult& result, const DriveConfig& cfg, const std::string& scenario) {
  echo(result, "scenario", scenario);
  echo(result, "omega_rf", cfg.omega_rf);
  echo(result, "total_time", cfg.total_time);
  echo(result, "pulse_count", cfg.pulse_count);
  echo(result, "init_level", cfg.init_level);
  echo(result, "mode", cfg.mode == DriveMode::Ideal ? "ideal" : "full");
  if (cfg.mode == DriveMode::Full) {
    echo(result, "omega_laser", cfg.omega_laser);
    echo(result, "laser_pulse_duration", cfg.laser_pulse_duration);
    echo(result, "gamma3", cfg.gamma3);
    echo(result, "rf_on_during_laser", cfg.rf_on_during_laser ? "true" : "false");
    echo(result, "integrator_steps", cfg.integrator_steps);
    echo(result, "trace_drift_limit", cfg.trace_drift_limit);
  }
}

// How the ideal engine treats a schedule event.
struct EventChannel {
  enum class Kind { Project, Partial, Kick } kind = Kind::Project;
  MeasurementStrength eta{1.0};
  KickOperator kick;
};

DensityMatrix apply_event(const DensityMatrix& rho, const ProjectorSet& basis,
                          const EventChannel& channel) {
  switch (channel.kind) {
    case EventChannel::Kind::Partial:
      return measure::partial_collapse(rho, basis, channel.eta);
    case EventChannel::Kind::Kick:
      return measure::apply_kick(rho, channel.kick);
    case EventChannel::Kind::Project:
    default:
      return measure::project_nonselective(rho, basis);
  }
}

// Two-level rotating-frame engine: unitary drive segments separated by the
// event channel, sampled densely enough for plotting.
ExperimentResult run_ideal_engine(const DriveConfig& cfg, const std::vector<double>& event_times,
                                  const EventChannel& channel) {
  const double total_time = cfg.total_time;
  const ComplexMatrix h = rf_hamiltonian(cfg.omega_rf, 2);
  const ProjectorSet basis = ProjectorSet::computational_basis(2);

  const int segment_count = static_cast<int>(event_times.size()) + 1;
  const int samples_per_segment = std::max(2, 256 / segment_count);

  DensityMatrix rho = level_state(2, cfg.init_level - 1);
  Recorder recorder(level_labels(2));
  recorder.record(0.0, rho.mat);

  double segment_start = 0.0;
  for (int segment = 0; segment < segment_count; ++segment) {
    const double segment_end =
        segment < static_cast<int>(event_times.size()) ? event_times[segment] : total_time;
    const double length = segment_end - segment_start;
    if (length > 0.0) {
      const double dt = length / samples_per_segment;
      const ComplexMatrix u = qalg::expm_hermitian(h, dt);
      for (int k = 1; k <= samples_per_segment; ++k) {
        rho = DensityMatrix{u * rho.mat * u.adjoint()};
        recorder.record(segment_start + k * dt, rho.mat);
      }
    }
    if (segment < static_cast<int>(event_times.size())) {
      rho = apply_event(rho, basis, channel);
      recorder.record(segment_end, rho.mat);
    }
    segment_start = segment_end;
  }

  ExperimentResult result = recorder.take();
  result.summary.emplace_back("p1_final", rho.population(kLevel1));
  result.summary.emplace_back("p2_final", rho.population(kLevel2));
  result.summary.emplace_back("survival", rho.population(cfg.init_level - 1));
  return result;
}

std::vector<double> equal_event_times(int n, double total_time) {
  if (n == 0) return {};
  std::vector<double> times;
  for (const schedule::ScheduleEvent& event : schedule::equal_spacing(n, total_time).events) {
    times.push_back(event.time);
  }
  return times;
}

}  // namespace

DriveConfig DriveConfig::resolved() const {
  DriveConfig out = *this;
  if (out.total_time < 0.0) {
    out.total_time = out.omega_rf > 0.0 ? kPi / out.omega_rf : -1.0;
  }
  if (out.mode == DriveMode::Full) {
    if (out.laser_pulse_duration < 0.0) out.laser_pulse_duration = 5e-4 * out.total_time;
    if (out.omega_laser < 0.0) out.omega_laser = 40.0 / out.laser_pulse_duration;
    if (out.gamma3 < 0.0) out.gamma3 = 40.0 / out.laser_pulse_duration;
  }
  return out;
}

void DriveConfig::validate() const {
  if (!(omega_rf > 0.0) || !std::isfinite(omega_rf)) {
    throw ConfigInvalid("drive: omega_rf must be finite and positive");
  }
  if (!(total_time > 0.0) || !std::isfinite(total_time)) {
    throw ConfigInvalid("drive: total_time must be finite and positive");
  }
  if (pulse_count < 0) throw ConfigInvalid("drive: pulse_count must be >= 0");
  if (init_level != 1 && init_level != 2) {
    throw ConfigInvalid("drive: init_level must be 1 or 2");
  }
  if (mode == DriveMode::Full) {
    if (!(laser_pulse_duration > 0.0)) {
      throw ConfigInvalid("drive: laser_pulse_duration must be positive in full mode");
    }
    if (pulse_count > 0 && !(pulse_count * laser_pulse_duration < total_time)) {
      throw ConfigInvalid("drive: n * laser_pulse_duration must stay below total_time");
    }
    if (pulse_count > 0 && !(laser_pulse_duration < total_time / pulse_count)) {
      throw ConfigInvalid("drive: laser pulses must fit between measurement times");
    }
    if (omega_laser < 0.0 || !std::isfinite(omega_laser)) {
      throw ConfigInvalid("drive: omega_laser must be finite and >= 0");
    }
    if (gamma3 < 0.0 || !std::isfinite(gamma3)) {
      throw ConfigInvalid("drive: gamma3 must be finite and >= 0");
    }
    if (integrator_steps < 1) throw ConfigInvalid("drive: integrator_steps must be >= 1");
    if (!(trace_drift_limit > 0.0)) {
      throw ConfigInvalid("drive: trace_drift_limit must be positive");
    }
  }
}

double ExperimentResult::summary_value(const std::string& key) const {
  for (const auto& [name, value] : summary) {
    if (name == key) return value;
  }
  throw ZenoError("ExperimentResult: no summary value named '" + key + "'");
}

void ExperimentResult::validate() const {
  for (const auto& series : populations) {
    if (series.size() != time_grid.size()) {
      throw ZenoError("ExperimentResult: population series length mismatch");
    }
  }
  for (size_t ti = 0; ti < time_grid.size(); ++ti) {
    double sum = 0.0;
    for (const auto& series : populations) {
      const double p = series[ti];
      if (p < -1e-9 || p > 1.0 + 1e-9) {
        throw ZenoError("ExperimentResult: population outside [0, 1] at t=" +
                        format_double(time_grid[ti]));
      }
      sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-7) {
      throw ZenoError("ExperimentResult: population sum deviates from 1 at t=" +
                      format_double(time_grid[ti]));
    }
  }
}

ExperimentResult run_drive_ideal(const DriveConfig& raw) {
  const DriveConfig cfg = raw.resolved();
  cfg.validate();
  if (cfg.mode != DriveMode::Ideal) {
    throw ConfigInvalid("run_drive_ideal: mode must be Ideal");
  }
  if (cfg.init_level != 1) {
    throw ConfigInvalid("run_drive_ideal: init_level must be 1 (see run_reversed)");
  }
  ExperimentResult result = run_ideal_engine(
      cfg, equal_event_times(cfg.pulse_count, cfg.total_time), EventChannel{});
  echo_drive(result, cfg, "drive_ideal");
  result.validate();
  return result;
}

ExperimentResult run_drive_full(const DriveConfig& raw) {
  const DriveConfig cfg = raw.resolved();
  cfg.validate();
  if (cfg.mode != DriveMode::Full) {
    throw ConfigInvalid("run_drive_full: mode must be Full");
  }

  const int n = cfg.pulse_count;
  const double total_time = cfg.total_time;
  const double tau = cfg.laser_pulse_duration;

  // Segment chain: [gap to (t_k - tau)][pulse ending at t_k] ... [tail gap].
  // Spontaneous decay 3 -> 1 acts in every segment; the 1<->3 coupling only
  // within pulse windows; the RF drive per rf_on_during_laser.
  struct Piece {
    double start;
    double length;
    bool laser_on;
  };
  std::vector<Piece> pieces;
  const std::vector<double> times = equal_event_times(n, total_time);
  double cursor = 0.0;
  for (double t_k : times) {
    const double pulse_start = t_k - tau;
    pieces.push_back({cursor, pulse_start - cursor, false});
    pieces.push_back({pulse_start, tau, true});
    cursor = t_k;
  }
  if (cursor < total_time) pieces.push_back({cursor, total_time - cursor, false});

  ComplexMatrix jump(3);
  jump.at(kLevel1, kLevel3) = 1.0;
  const std::vector<JumpOperator> jumps = {{jump, cfg.gamma3}};

  const ComplexMatrix h_gap = rf_hamiltonian(cfg.omega_rf, 3);
  ComplexMatrix h_pulse = laser_coupling(cfg.omega_laser);
  if (cfg.rf_on_during_laser) h_pulse = h_pulse + h_gap;

  DensityMatrix rho = level_state(3, cfg.init_level - 1);
  Recorder recorder(level_labels(3));
  recorder.record(0.0, rho.mat);

  const int samples_per_segment =
      std::max(2, 128 / std::max(1, static_cast<int>(pieces.size())));
  for (const Piece& piece : pieces) {
    if (!(piece.length > 0.0)) continue;
    const ComplexMatrix& h = piece.laser_on ? h_pulse : h_gap;
    // explicit RK4 stability + accuracy floor for the stiff decay
    const double rate_scale =
        cfg.gamma3 + cfg.omega_rf + (piece.laser_on ? cfg.omega_laser : 0.0);
    IntegratorConfig icfg;
    icfg.step_count = std::max<int>(
        cfg.integrator_steps, static_cast<int>(std::ceil(piece.length * rate_scale * 5.0)));
    icfg.trace_drift_limit = cfg.trace_drift_limit;

    const int stride = std::max(1, icfg.step_count / samples_per_segment);
    const double start = piece.start;
    int step_counter = 0;
    rho = dynamics::evolve_lindblad(
        rho, {h, piece.length}, jumps, icfg,
        [&recorder, &step_counter, start, stride, &icfg](double t, const ComplexMatrix& state) {
          ++step_counter;
          if (step_counter % stride == 0 && step_counter < icfg.step_count) {
            recorder.record(start + t, state);
          }
        });
    recorder.record(piece.start + piece.length, rho.mat);
  }

  ExperimentResult result = recorder.take();
  result.summary.emplace_back("p1_final", rho.population(kLevel1));
  result.summary.emplace_back("p2_final", rho.population(kLevel2));
  result.summary.emplace_back("p3_final", rho.population(kLevel3));
  result.summary.emplace_back("survival", rho.population(cfg.init_level - 1));
  echo_drive(result, cfg, "drive_full");
  result.validate();
  return result;
}

ExperimentResult run_reversed(DriveConfig cfg) {
  cfg.init_level = 2;
  const DriveConfig resolved = cfg.resolved();
  resolved.validate();
  ExperimentResult result;
  if (resolved.mode == DriveMode::Ideal) {
    result = run_ideal_engine(
        resolved, equal_event_times(resolved.pulse_count, resolved.total_time), EventChannel{});
  } else {
    result = run_drive_full(resolved);
    result.config_echo.clear();
  }
  echo_drive(result, resolved, "drive_reversed");
  result.validate();
  return result;
}

ExperimentResult run_partial(const DriveConfig& raw, const MeasurementStrength& eta) {
  const DriveConfig cfg = raw.resolved();
  cfg.validate();
  if (cfg.mode != DriveMode::Ideal) {
    throw ConfigInvalid("run_partial: ideal mode only");
  }
  if (!(eta.eta >= 0.0 && eta.eta <= 1.0)) {
    throw StrengthOutOfRange("run_partial: eta must lie in [0, 1]");
  }
  EventChannel channel;
  channel.kind = EventChannel::Kind::Partial;
  channel.eta = eta;
  ExperimentResult result =
      run_ideal_engine(cfg, equal_event_times(cfg.pulse_count, cfg.total_time), channel);
  result.summary.emplace_back("eta", eta.eta);
  echo_drive(result, cfg, "drive_partial");
  echo(result, "eta", eta.eta);
  result.validate();
  return result;
}

ExperimentResult run_bangbang(const DriveConfig& raw, const KickOperator& kick) {
  const DriveConfig cfg = raw.resolved();
  cfg.validate();
  if (cfg.mode != DriveMode::Ideal) {
    throw ConfigInvalid("run_bangbang: ideal mode only");
  }
  if (kick.unitary.dim() != 2) {
    throw DimensionMismatch("run_bangbang: kick must act on the two-level system");
  }
  if (!kick.unitary.is_unitary(tol::unitary)) {
    throw NonUnitaryKick("run_bangbang: kick operator is not unitary within tolerance");
  }
  EventChannel channel;
  channel.kind = EventChannel::Kind::Kick;
  channel.kick = kick;
  ExperimentResult result =
      run_ideal_engine(cfg, equal_event_times(cfg.pulse_count, cfg.total_time), channel);

  // projective companion for the same n
  const ExperimentResult projective =
      run_ideal_engine(cfg, equal_event_times(cfg.pulse_count, cfg.total_time), EventChannel{});
  result.summary.emplace_back("p2_final_projective", projective.summary_value("p2_final"));
  echo_drive(result, cfg, "drive_bangbang");
  result.validate();
  return result;
}

double ReservoirConfig::recurrence_time() const {
  return 2.0 * kPi * mode_count / band_width;
}

void ReservoirConfig::validate() const {
  if (mode_count < 2) throw ConfigInvalid("reservoir: mode_count must be >= 2");
  if (!(band_width > 0.0)) throw ConfigInvalid("reservoir: band_width must be positive");
  if (!(measurement_interval > 0.0)) {
    throw ConfigInvalid("reservoir: measurement_interval must be positive");
  }
  if (measurement_count < 0) throw ConfigInvalid("reservoir: measurement_count must be >= 0");
  if (!std::isfinite(coupling) || !std::isfinite(band_center)) {
    throw ConfigInvalid("reservoir: coupling and band_center must be finite");
  }
}

ExperimentResult run_unstable(const ReservoirConfig& cfg) {
  cfg.validate();
  const int n_modes = cfg.mode_count;
  const int dim = n_modes + 1;

  // H: excited level at energy 0 (index 0), modes spanning the band, uniform
  // coupling g between the excited level and every mode.
  ComplexMatrix h(dim);
  for (int k = 0; k < n_modes; ++k) {
    const double energy =
        cfg.band_center - 0.5 * cfg.band_width +
        cfg.band_width * (n_modes == 1 ? 0.5 : static_cast<double>(k) / (n_modes - 1));
    h.at(k + 1, k + 1) = energy;
    h.at(0, k + 1) = cfg.coupling;
    h.at(k + 1, 0) = cfg.coupling;
  }

  const ComplexMatrix u = qalg::expm_hermitian(h, cfg.measurement_interval);
  const ProjectorSet split = measure::subspace_projectors(dim, {0});

  DensityMatrix rho = level_state(dim, 0);

  // the recorder tracks two aggregate series, not all dim levels
  ExperimentResult result;
  std::vector<double> excited_series, bath_series, trace_series, purity_series;
  Diagnostics diag;
  std::vector<double> grid;

  auto record = [&](double t, const DensityMatrix& state) {
    grid.push_back(t);
    const double excited = state.mat.at(0, 0).real();
    const double trace = state.mat.trace().real();
    excited_series.push_back(excited);
    bath_series.push_back(trace - excited);
    trace_series.push_back(trace);
    purity_series.push_back(state.purity());
    diag.max_trace_drift = std::max(diag.max_trace_drift, std::abs(trace - 1.0));
    diag.min_eigenvalue = std::min(diag.min_eigenvalue, state.min_eigenvalue());
  };

  record(0.0, rho);
  for (int step = 1; step <= cfg.measurement_count; ++step) {
    rho = DensityMatrix{u * rho.mat * u.adjoint()};
    rho = measure::project_nonselective(rho, split);
    record(step * cfg.measurement_interval, rho);
  }

  const double horizon = cfg.measurement_count * cfg.measurement_interval;
  const double survival = rho.population(0);
  const double effective_rate =
      horizon > 0.0 ? -std::log(std::max(survival, 1e-300)) / horizon : 0.0;

  // unmeasured comparison over the same horizon
  double unmeasured_survival = 1.0;
  if (horizon > 0.0) {
    const ComplexMatrix u_total = qalg::expm_hermitian(h, horizon);
    const DensityMatrix free_rho{u_total * level_state(dim, 0).mat * u_total.adjoint()};
    unmeasured_survival = free_rho.population(0);
  }
  const double unmeasured_rate =
      horizon > 0.0 ? -std::log(std::max(unmeasured_survival, 1e-300)) / horizon : 0.0;

  result.time_grid = std::move(grid);
  result.level_labels = {"p_excited", "p_bath"};
  result.populations = {std::move(excited_series), std::move(bath_series)};
  result.trace_series = std::move(trace_series);
  result.purity_series = std::move(purity_series);
  result.diagnostics = diag;
  result.summary.emplace_back("survival", survival);
  result.summary.emplace_back("effective_rate", effective_rate);
  result.summary.emplace_back("unmeasured_survival", unmeasured_survival);
  result.summary.emplace_back("unmeasured_effective_rate", unmeasured_rate);
  result.summary.emplace_back("recurrence_time", cfg.recurrence_time());

  echo(result, "scenario", std::string("unstable_reservoir"));
  echo(result, "mode_count", cfg.mode_count);
  echo(result, "band_center", cfg.band_center);
  echo(result, "band_width", cfg.band_width);
  echo(result, "coupling", cfg.coupling);
  echo(result, "measurement_interval", cfg.measurement_interval);
  echo(result, "measurement_count", cfg.measurement_count);

  if (horizon > cfg.recurrence_time()) {
    result.warnings.push_back(
        "total time exceeds the discretization recurrence time 2*pi*N/W; "
        "mode-recurrence artifacts possible");
  }
  result.validate();
  return result;
}

void SubspaceConfig::validate() const {
  if (hamiltonian.dim() < 2) throw ConfigInvalid("subspace: dimension must be >= 2");
  if (!hamiltonian.is_hermitian(tol::hermitian)) {
    throw ConfigInvalid("subspace: Hamiltonian must be Hermitian");
  }
  if (pulse_count < 0) throw ConfigInvalid("subspace: pulse_count must be >= 0");
  if (!(total_time > 0.0) || !std::isfinite(total_time)) {
    throw ConfigInvalid("subspace: total_time must be finite and positive");
  }
  if (subspace.empty()) throw ConfigInvalid("subspace: subspace must be nonempty");
  std::vector<int> unique = subspace;
  std::sort(unique.begin(), unique.end());
  unique.erase(std::unique(unique.begin(), unique.end()), unique.end());
  if (static_cast<int>(unique.size()) >= hamiltonian.dim()) {
    throw ConfigInvalid("subspace: subspace must be a proper subset of the levels");
  }
  for (int index : unique) {
    if (index < 0 || index >= hamiltonian.dim()) {
      throw ConfigInvalid("subspace: level index out of range");
    }
  }
}

ExperimentResult run_zeno_subspace(const SubspaceConfig& cfg) {
  cfg.validate();
  const int dim = cfg.dim();
  const ProjectorSet split = measure::subspace_projectors(dim, cfg.subspace);
  const ComplexMatrix& p_in = split.projectors[0];

  // projected generator P H P for the reference trajectory
  const ComplexMatrix php = p_in * cfg.hamiltonian * p_in;

  const int n = cfg.pulse_count;
  const std::vector<double> times = equal_event_times(n, cfg.total_time);
  // sample at projection times; for free evolution use a fixed fine grid
  std::vector<double> grid_times;
  if (n > 0) {
    grid_times = times;
  } else {
    const int samples = 128;
    for (int k = 1; k <= samples; ++k) grid_times.push_back(cfg.total_time * k / samples);
    grid_times.back() = cfg.total_time;
  }

  const int init_index = *std::min_element(cfg.subspace.begin(), cfg.subspace.end());
  DensityMatrix rho = level_state(dim, init_index);
  DensityMatrix rho_ref = rho;

  Recorder recorder(level_labels(dim));
  recorder.record(0.0, rho.mat);
  std::vector<std::vector<double>> reference(dim);
  for (int level = 0; level < dim; ++level) {
    reference[level].push_back(rho_ref.mat.at(level, level).real());
  }

  double cursor = 0.0;
  double max_deviation = 0.0;
  for (double t : grid_times) {
    const double length = t - cursor;
    if (length > 0.0) {
      const ComplexMatrix u = qalg::expm_hermitian(cfg.hamiltonian, length);
      rho = DensityMatrix{u * rho.mat * u.adjoint()};
      const ComplexMatrix u_ref = qalg::expm_hermitian(php, length);
      rho_ref = DensityMatrix{u_ref * rho_ref.mat * u_ref.adjoint()};
    }
    if (n > 0) rho = measure::project_nonselective(rho, split);
    recorder.record(t, rho.mat);
    for (int level = 0; level < dim; ++level) {
      reference[level].push_back(rho_ref.mat.at(level, level).real());
    }
    for (int index : cfg.subspace) {
      max_deviation = std::max(max_deviation, std::abs(rho.mat.at(index, index).real() -
                                                       rho_ref.mat.at(index, index).real()));
    }
    cursor = t;
  }

  double in_subspace = 0.0;
  for (int index : cfg.subspace) in_subspace += rho.mat.at(index, index).real();

  ExperimentResult result = recorder.take();
  result.reference_populations = std::move(reference);
  result.summary.emplace_back("leakage", 1.0 - in_subspace);
  result.summary.emplace_back("subspace_population_final", in_subspace);
  result.summary.emplace_back("php_max_deviation", max_deviation);

  echo(result, "scenario", std::string("zeno_subspace"));
  echo(result, "dim", dim);
  {
    std::string indices;
    for (size_t i = 0; i < cfg.subspace.size(); ++i) {
      if (i) indices += ",";
      indices += std::to_string(cfg.subspace[i]);
    }
    echo(result, "subspace", indices);
  }
  echo(result, "pulse_count", n);
  echo(result, "total_time", cfg.total_time);
  result.validate();
  return result;
}

TrajectoryResult run_drive_selective(const DriveConfig& raw, CounterRng& rng) {
  const DriveConfig cfg = raw.resolved();
  cfg.validate();
  if (cfg.mode != DriveMode::Ideal) {
    throw ConfigInvalid("run_drive_selective: ideal mode only");
  }
  const ComplexMatrix h = rf_hamiltonian(cfg.omega_rf, 2);
  const ProjectorSet basis = ProjectorSet::computational_basis(2);
  const std::vector<double> times = equal_event_times(cfg.pulse_count, cfg.total_time);

  DensityMatrix rho = level_state(2, cfg.init_level - 1);
  TrajectoryResult trajectory;
  trajectory.all_outcomes_initial = true;

  double cursor = 0.0;
  for (double t : times) {
    if (t > cursor) {
      const ComplexMatrix u = qalg::expm_hermitian(h, t - cursor);
      rho = DensityMatrix{u * rho.mat * u.adjoint()};
    }
    const measure::OutcomeRecord record = measure::measure_selective(rho, basis, rng);
    rho = record.post_state;
    if (record.outcome_index != cfg.init_level - 1) trajectory.all_outcomes_initial = false;
    cursor = t;
  }
  if (cursor < cfg.total_time) {
    const ComplexMatrix u = qalg::expm_hermitian(h, cfg.total_time - cursor);
    rho = DensityMatrix{u * rho.mat * u.adjoint()};
  }
  trajectory.p2_final = rho.population(kLevel2);
  return trajectory;
}

double drive_projected_p2(const DriveConfig& raw, const std::vector<double>& projection_times) {
  const DriveConfig cfg = raw.resolved();
  cfg.validate();
  const ComplexMatrix h = rf_hamiltonian(cfg.omega_rf, 2);
  const ProjectorSet basis = ProjectorSet::computational_basis(2);

  DensityMatrix rho = level_state(2, cfg.init_level - 1);
  double cursor = 0.0;
  for (double t : projection_times) {
    if (t > cursor) {
      const ComplexMatrix u = qalg::expm_hermitian(h, t - cursor);
      rho = DensityMatrix{u * rho.mat * u.adjoint()};
    }
    rho = measure::project_nonselective(rho, basis);
    cursor = t;
  }
  if (cursor < cfg.total_time) {
    const ComplexMatrix u = qalg::expm_hermitian(h, cfg.total_time - cursor);
    rho = DensityMatrix{u * rho.mat * u.adjoint()};
  }
  return rho.population(kLevel2);
}

schedule::ScheduleObjective make_drive_ideal_objective(const DriveConfig& cfg) {
  const DriveConfig resolved = cfg.resolved();
  resolved.validate();
  return [resolved](const schedule::Schedule& s) {
    std::vector<double> times;
    times.reserve(s.events.size());
    for (const schedule::ScheduleEvent& event : s.events) {
      if (!std::holds_alternative<schedule::InstantProjection>(event.kind)) {
        throw ConfigInvalid("drive ideal objective: only instant projections are supported");
      }
      times.push_back(event.time);
    }
    return drive_projected_p2(resolved, times);
  };
}

}  // namespace zeno::scenarios
