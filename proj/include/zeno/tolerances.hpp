#pragma once

// Numerical tolerances used across the library. These are part of the
// contracts of the operations that reference them; callers must not loosen
// them ad hoc.

namespace zeno::tol {

// Hermiticity of operator inputs (max elementwise deviation from M = M†).
inline constexpr double hermitian = 1e-10;

// Unitarity of propagators and kicks (max elementwise |U†U - I|).
inline constexpr double unitary = 1e-10;

// Squared-norm deviation allowed for a state vector.
inline constexpr double state_norm = 1e-9;

// Density-matrix invariants: Hermiticity, trace, eigenvalue floor.
inline constexpr double density_hermitian = 1e-10;
inline constexpr double density_trace = 1e-9;
inline constexpr double density_eig_floor = -1e-9;

// Looser floors for states coming out of the fixed-step Lindblad integrator.
inline constexpr double lindblad_hermitian = 1e-9;
inline constexpr double lindblad_eig_floor = -1e-7;

// Eigendecomposition: reconstruction residual and Jacobi sweep convergence
// threshold on the off-diagonal Frobenius mass (relative to ||M||_F).
inline constexpr double eig_reconstruct = 1e-9;
inline constexpr double jacobi_threshold = 1e-14;

// Projector-set invariants: idempotence, orthogonality, completeness.
inline constexpr double projector = 1e-10;

// Default trace-drift limit for the Lindblad integrator.
inline constexpr double trace_drift_limit = 1e-7;

}  // namespace zeno::tol
