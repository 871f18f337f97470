#pragma once

// End-to-end experiment builders binding dynamics, measurement channels and
// schedules into the named demonstrations: the three-level ion experiment in
// its ideal and full (finite pulse + optical pumping) forms, the reversed
// initialization, a discretized-reservoir decay scenario with Zeno and
// anti-Zeno regimes, subspace confinement, partial-strength measurements and
// unitary bang-bang kicks.
//
// Every run is a pure function of its config; results carry the sampled time
// series, summary scalars, conservation diagnostics and a config echo.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "zeno/dynamics.hpp"
#include "zeno/measure.hpp"
#include "zeno/schedule.hpp"

namespace zeno::scenarios {

enum class DriveMode { Ideal, Full };

// Drive and measurement-pulse parameters for the interrupted pi-pulse
// experiment. Levels are labeled 1..3; the RF field couples 1<->2 at angular
// Rabi frequency omega_rf in the resonant rotating frame, H = (Omega/2) sx.
//
// Negative values for total_time, laser_pulse_duration, omega_laser and
// gamma3 mean "use the documented default", resolved by resolved():
//   total_time           -> pi / omega_rf (the pi-pulse)
//   laser_pulse_duration -> 5e-4 * total_time
//   omega_laser, gamma3  -> 40 / laser_pulse_duration
// The 40 is a dimensionless pulse area: strong enough that one pulse fully
// dephases the 1-2 coherence while optical pumping returns the level-3
// population between pulses. These defaults are representative, not values
// from any historical apparatus.
struct DriveConfig {
  double omega_rf = 1.0;
  double total_time = -1.0;
  int pulse_count = 0;  // n
  int init_level = 1;   // 1 or 2
  DriveMode mode = DriveMode::Ideal;

  // full mode extras
  double omega_laser = -1.0;          // 1<->3 coupling during a laser pulse
  double laser_pulse_duration = -1.0; // each pulse window ends on k T / n
  double gamma3 = -1.0;               // spontaneous decay rate 3 -> 1
  bool rf_on_during_laser = true;

  // integrator knobs (full mode); the per-segment step count is raised
  // above this base when stiffness demands it
  int integrator_steps = 5000;
  double trace_drift_limit = tol::trace_drift_limit;

  DriveConfig resolved() const;
  void validate() const;  // throws ConfigInvalid; expects resolved values
};

// One excited level coupled with uniform strength to mode_count equally
// spaced reservoir modes across [band_center - band_width/2, band_center +
// band_width/2], with a projective excited-vs-rest measurement every
// measurement_interval, measurement_count times.
struct ReservoirConfig {
  int mode_count = 64;             // N >= 2
  double band_center = 0.0;        // detuning of the band center
  double band_width = 4.0;         // W > 0
  double coupling = 0.05;          // g
  double measurement_interval = 0.2;  // tau > 0
  int measurement_count = 20;      // m >= 0

  double recurrence_time() const;  // 2 pi N / W of the discretization
  void validate() const;
};

// Evolution under an arbitrary Hamiltonian with subspace-vs-rest projections
// at equal spacing; pulse_count = 0 means free evolution.
struct SubspaceConfig {
  qalg::ComplexMatrix hamiltonian;
  std::vector<int> subspace;  // nonempty proper subset of levels (0-based)
  int pulse_count = 0;
  double total_time = 1.0;

  int dim() const { return hamiltonian.dim(); }
  void validate() const;
};

struct Diagnostics {
  double max_trace_drift = 0.0;  // max |Tr(rho) - 1| over recorded points
  double min_eigenvalue = 1.0;   // min over recorded points
};

struct ExperimentResult {
  std::vector<double> time_grid;
  std::vector<std::string> level_labels;          // parallel to populations
  std::vector<std::vector<double>> populations;   // [level][time index]
  std::vector<double> trace_series;
  std::vector<double> purity_series;
  // reference trajectory (projected-Hamiltonian evolution) where a scenario
  // defines one; empty otherwise
  std::vector<std::vector<double>> reference_populations;
  std::vector<std::pair<std::string, double>> summary;
  Diagnostics diagnostics;
  std::vector<std::pair<std::string, std::string>> config_echo;
  std::optional<uint64_t> rng_seed;
  std::vector<std::string> warnings;

  double summary_value(const std::string& key) const;
  // population bounds and per-point population sum = 1 within 1e-7
  void validate() const;
};

// Ideal run: two-level rotating frame, instantaneous non-selective
// projections at equal spacing. Requires mode = Ideal and init_level = 1.
ExperimentResult run_drive_ideal(const DriveConfig& cfg);

// Full run: three-level Lindblad simulation with finite laser pulses
// (coherent 1<->3 coupling) and spontaneous decay 3 -> 1 acting throughout.
ExperimentResult run_drive_full(const DriveConfig& cfg);

// Same engines with the ion initialized in level 2; reports p1_final.
ExperimentResult run_reversed(DriveConfig cfg);

// Ideal run with the projection replaced by a partial-strength measurement.
ExperimentResult run_partial(const DriveConfig& cfg, const measure::MeasurementStrength& eta);

// Ideal run with the projection replaced by a unitary kick; the summary also
// carries the projective result for the same n for comparison.
ExperimentResult run_bangbang(const DriveConfig& cfg, const measure::KickOperator& kick);

// Discretized-reservoir decay with periodic excited-vs-rest projections.
// The summary carries survival, effective_rate = -ln(survival)/(m tau) and
// the unmeasured values over the same horizon. Exceeding the discretization
// recurrence time adds a warning to the result.
ExperimentResult run_unstable(const ReservoirConfig& cfg);

// Subspace confinement: projections onto {subspace, rest} at equal spacing,
// with the projected-Hamiltonian (P H P) trajectory attached as reference.
ExperimentResult run_zeno_subspace(const SubspaceConfig& cfg);

// One selective trajectory of the ideal experiment: outcomes are sampled at
// each measurement. Used to verify selective/non-selective equivalence.
struct TrajectoryResult {
  double p2_final = 0.0;
  bool all_outcomes_initial = false;  // every measurement found the ion in
                                      // its initial level
};
TrajectoryResult run_drive_selective(const DriveConfig& cfg, measure::CounterRng& rng);

// p2 at time T for the ideal engine with projections at arbitrary times;
// this is the engine-path objective used by the schedule optimizer.
double drive_projected_p2(const DriveConfig& cfg, const std::vector<double>& projection_times);
schedule::ScheduleObjective make_drive_ideal_objective(const DriveConfig& cfg);

}  // namespace zeno::scenarios
