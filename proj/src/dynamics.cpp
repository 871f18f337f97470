#include "zeno/dynamics.hpp"

#include <cmath>
#include <string>

namespace zeno::dynamics {

using qalg::complexd;
using qalg::ComplexMatrix;
using qalg::DensityMatrix;
using qalg::StateVector;

void DriveSegment::validate() const {
  if (!hamiltonian.is_hermitian(tol::hermitian)) {
    throw NonHermitianInput("DriveSegment: Hamiltonian is not Hermitian within tolerance");
  }
  if (!(duration >= 0.0) || !std::isfinite(duration)) {
    throw InvalidDuration("DriveSegment: duration must be finite and >= 0");
  }
}

DensityMatrix evolve_unitary(const DensityMatrix& state, const DriveSegment& segment) {
  segment.validate();
  if (state.dim() != segment.hamiltonian.dim()) {
    throw DimensionMismatch("evolve_unitary: state and Hamiltonian dimensions differ");
  }
  state.validate();
  const ComplexMatrix u = qalg::expm_hermitian(segment.hamiltonian, segment.duration);
  return DensityMatrix{u * state.mat * u.adjoint()};
}

double survival_probability(const ComplexMatrix& h, const StateVector& phi, double t) {
  if (!h.is_hermitian(tol::hermitian)) {
    throw NonHermitianInput("survival_probability: H is not Hermitian within tolerance");
  }
  if (h.dim() != phi.dim()) {
    throw DimensionMismatch("survival_probability: dimensions differ");
  }
  if (!phi.is_normalized()) {
    throw NotNormalized("survival_probability: state vector is not normalized");
  }
  const ComplexMatrix u = qalg::expm_hermitian(h, t);
  const complexd amplitude = qalg::inner_product(phi, qalg::apply(u, phi));
  return std::norm(amplitude);
}

double energy_variance(const ComplexMatrix& h, const StateVector& phi) {
  if (!h.is_hermitian(tol::hermitian)) {
    throw NonHermitianInput("energy_variance: H is not Hermitian within tolerance");
  }
  if (h.dim() != phi.dim()) {
    throw DimensionMismatch("energy_variance: dimensions differ");
  }
  if (!phi.is_normalized()) {
    throw NotNormalized("energy_variance: state vector is not normalized");
  }
  // <H^2> as ||H phi||^2 keeps the result nonnegative up to rounding.
  const StateVector h_phi = qalg::apply(h, phi);
  const double mean = qalg::inner_product(phi, h_phi).real();
  double second_moment = 0.0;
  for (const complexd& z : h_phi.amplitudes) second_moment += std::norm(z);
  return second_moment - mean * mean;
}

double short_time_survival(const ComplexMatrix& h, const StateVector& phi, double t) {
  return 1.0 - energy_variance(h, phi) * t * t;
}

namespace {

// Lindblad right-hand side with the drift folded into G = -iH - (1/2) sum
// gamma L†L:  rhs(rho) = G rho + rho G† + sum gamma L rho L†.
struct LindbladGenerator {
  ComplexMatrix drift;         // G
  ComplexMatrix drift_adjoint; // G†
  std::vector<ComplexMatrix> jump_ops;
  std::vector<ComplexMatrix> jump_adjoints;
  std::vector<double> rates;

  // scratch
  mutable ComplexMatrix t1, t2;

  LindbladGenerator(const ComplexMatrix& h, const std::vector<JumpOperator>& jumps) {
    const int d = h.dim();
    drift = complexd{0.0, -1.0} * h;
    for (const JumpOperator& jump : jumps) {
      if (jump.rate < 0.0) throw NegativeRate("evolve_lindblad: jump rate must be >= 0");
      if (jump.op.dim() != d) {
        throw DimensionMismatch("evolve_lindblad: jump operator dimension differs");
      }
      if (jump.rate == 0.0) continue;
      jump_ops.push_back(jump.op);
      jump_adjoints.push_back(jump.op.adjoint());
      rates.push_back(jump.rate);
      qalg::add_scaled(drift, -0.5 * jump.rate, jump_adjoints.back() * jump.op);
    }
    drift_adjoint = drift.adjoint();
    t1 = ComplexMatrix(d);
    t2 = ComplexMatrix(d);
  }

  void rhs(const ComplexMatrix& rho, ComplexMatrix& out) const {
    qalg::mul_into(drift, rho, out);
    qalg::mul_into(rho, drift_adjoint, t1);
    qalg::add_scaled(out, 1.0, t1);
    for (size_t j = 0; j < jump_ops.size(); ++j) {
      qalg::mul_into(jump_ops[j], rho, t1);
      qalg::mul_into(t1, jump_adjoints[j], t2);
      qalg::add_scaled(out, rates[j], t2);
    }
  }
};

}  // namespace

DensityMatrix evolve_lindblad(const DensityMatrix& state, const DriveSegment& segment,
                              const std::vector<JumpOperator>& jumps,
                              const IntegratorConfig& cfg, const StepObserver& observer) {
  segment.validate();
  if (state.dim() != segment.hamiltonian.dim()) {
    throw DimensionMismatch("evolve_lindblad: state and Hamiltonian dimensions differ");
  }
  if (cfg.step_count <= 0) throw InvalidCount("evolve_lindblad: step_count must be positive");
  state.validate();

  const LindbladGenerator gen(segment.hamiltonian, jumps);
  const int d = state.dim();
  const int steps = cfg.step_count;
  const double dt = segment.duration / steps;

  ComplexMatrix rho = state.mat;
  ComplexMatrix k1(d), k2(d), k3(d), k4(d), stage(d);

  for (int step = 0; step < steps; ++step) {
    gen.rhs(rho, k1);
    stage = rho;
    qalg::add_scaled(stage, 0.5 * dt, k1);
    gen.rhs(stage, k2);
    stage = rho;
    qalg::add_scaled(stage, 0.5 * dt, k2);
    gen.rhs(stage, k3);
    stage = rho;
    qalg::add_scaled(stage, dt, k3);
    gen.rhs(stage, k4);

    qalg::add_scaled(rho, dt / 6.0, k1);
    qalg::add_scaled(rho, dt / 3.0, k2);
    qalg::add_scaled(rho, dt / 3.0, k3);
    qalg::add_scaled(rho, dt / 6.0, k4);

    if (observer) observer(dt * (step + 1), rho);
  }

  const double drift = std::abs(rho.trace() - complexd{1.0, 0.0});
  // NaN-safe: any non-finite trace counts as drift.
  if (!(drift <= cfg.trace_drift_limit)) {
    throw TraceDriftExceeded("evolve_lindblad: trace drift " + std::to_string(drift) +
                             " exceeds limit (step size too coarse for the generator)");
  }
  const DensityMatrix result{rho};
  if (!rho.is_hermitian(tol::lindblad_hermitian) ||
      result.min_eigenvalue() < tol::lindblad_eig_floor) {
    throw InvalidDensity("evolve_lindblad: integrator output violates density invariants");
  }
  return result;
}

double rabi_population(double omega, double t) {
  const double s = std::sin(0.5 * omega * t);
  return s * s;
}

}  // namespace zeno::dynamics
