#pragma once

// Time evolution engines: exact unitary propagation of density matrices,
// survival-probability algebra for short times, and a fixed-step RK4
// integrator for the Lindblad master equation
//   drho/dt = -i[H, rho] + sum_j gamma_j (L rho L† - {L†L, rho}/2)
// with hbar = 1 and all frequencies angular.

#include <functional>
#include <vector>

#include "zeno/qalg.hpp"

namespace zeno::dynamics {

// Piecewise-constant Hamiltonian applied for a fixed duration. Time-dependent
// drives are represented by lists of segments (rotating-frame treatment).
struct DriveSegment {
  qalg::ComplexMatrix hamiltonian;
  double duration = 0.0;

  void validate() const;  // Hermitian within tol::hermitian, duration >= 0
};

struct JumpOperator {
  qalg::ComplexMatrix op;  // dimensionless structure, e.g. |1><3|
  double rate = 0.0;       // gamma >= 0, inverse time
};

struct IntegratorConfig {
  // RK4 steps across one drive segment. Fixed, not adaptive: callers that
  // integrate stiff generators are responsible for raising it.
  int step_count = 5000;
  double trace_drift_limit = tol::trace_drift_limit;
};

// rho -> U rho U† with U = exp(-i H t). Purity is preserved.
qalg::DensityMatrix evolve_unitary(const qalg::DensityMatrix& state, const DriveSegment& segment);

// S(t) = |<phi| exp(-i H t) |phi>|^2
double survival_probability(const qalg::ComplexMatrix& h, const qalg::StateVector& phi, double t);

// (Delta H)^2 = <phi|H^2|phi> - <phi|H|phi>^2
double energy_variance(const qalg::ComplexMatrix& h, const qalg::StateVector& phi);

// Quadratic approximation 1 - (Delta H)^2 t^2, valid only for small t.
double short_time_survival(const qalg::ComplexMatrix& h, const qalg::StateVector& phi, double t);

// Called after each accepted RK4 step with the absolute segment-local time
// and the current state matrix.
using StepObserver = std::function<void(double, const qalg::ComplexMatrix&)>;

// Fixed-step RK4 over one segment. Checks the trace drift against
// cfg.trace_drift_limit (throws TraceDriftExceeded, which signals that the
// step count is too coarse for the generator) and the output state against
// the Lindblad tolerances.
qalg::DensityMatrix evolve_lindblad(const qalg::DensityMatrix& state, const DriveSegment& segment,
                                    const std::vector<JumpOperator>& jumps,
                                    const IntegratorConfig& cfg = {},
                                    const StepObserver& observer = {});

// Closed-form resonant Rabi transfer P2(t) = sin^2(Omega t / 2).
double rabi_population(double omega, double t);

}  // namespace zeno::dynamics
