#pragma once

// Small dense complex linear algebra for exact evolution of d-level systems.
// Everything here is sized for d up to a few hundred: storage is a flat
// row-major vector, the eigensolver is cyclic complex Jacobi, and all
// operations are pure functions over immutable values.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

#include "zeno/errors.hpp"
#include "zeno/tolerances.hpp"

namespace zeno::qalg {

using complexd = std::complex<double>;

class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  explicit ComplexMatrix(int dim) : dim_(dim), entries_(static_cast<size_t>(dim) * dim) {}
  ComplexMatrix(int dim, std::vector<complexd> entries);

  // Row-major construction from nested braces, e.g. {{1, 0}, {0, -1}}.
  static ComplexMatrix from_rows(std::initializer_list<std::initializer_list<complexd>> rows);
  static ComplexMatrix identity(int dim);

  int dim() const { return dim_; }
  complexd& at(int r, int c) { return entries_[static_cast<size_t>(r) * dim_ + c]; }
  const complexd& at(int r, int c) const { return entries_[static_cast<size_t>(r) * dim_ + c]; }
  const std::vector<complexd>& entries() const { return entries_; }
  std::vector<complexd>& entries() { return entries_; }

  ComplexMatrix adjoint() const;
  complexd trace() const;
  double frobenius_norm() const;
  double max_abs() const;

  bool is_hermitian(double tolerance = tol::hermitian) const;
  bool is_unitary(double tolerance = tol::unitary) const;
  bool is_positive_semidefinite(double tolerance = -tol::density_eig_floor) const;

 private:
  int dim_ = 0;
  std::vector<complexd> entries_;
};

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(complexd scale, const ComplexMatrix& m);

// Allocation-free kernels for integrator inner loops: out = a*b and
// out += scale*m. Aliasing between out and the inputs of mul_into is not
// allowed.
void mul_into(const ComplexMatrix& a, const ComplexMatrix& b, ComplexMatrix& out);
void add_scaled(ComplexMatrix& out, complexd scale, const ComplexMatrix& m);

// Largest elementwise |a - b|; dimensions must match.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

// Pure state over a d-level system.
struct StateVector {
  std::vector<complexd> amplitudes;

  int dim() const { return static_cast<int>(amplitudes.size()); }
  double squared_norm() const;
  bool is_normalized(double tolerance = tol::state_norm) const;

  // Basis state |index> in dimension dim.
  static StateVector basis(int dim, int index);
};

complexd inner_product(const StateVector& a, const StateVector& b);
StateVector apply(const ComplexMatrix& m, const StateVector& v);

// Mixed (or pure) state. The matrix is stored as-is; validate() checks the
// density-matrix invariants at the stated tolerances. Engine-internal code
// manipulates .mat directly and validates at module boundaries.
struct DensityMatrix {
  ComplexMatrix mat;

  int dim() const { return mat.dim(); }
  double purity() const;

  // Throws InvalidDensity unless Hermitian within hermitian_tolerance,
  // trace 1 within tol::density_trace, and eigenvalues >= eig_floor.
  void validate(double hermitian_tolerance = tol::density_hermitian,
                double eig_floor = tol::density_eig_floor) const;
  bool is_valid(double hermitian_tolerance = tol::density_hermitian,
                double eig_floor = tol::density_eig_floor) const;

  double min_eigenvalue() const;
  double population(int level) const { return mat.at(level, level).real(); }
};

struct EigResult {
  std::vector<double> eigenvalues;  // ascending
  ComplexMatrix eigenvectors;       // columns; M = V diag(w) V†
};

// Cyclic complex Jacobi diagonalization of a Hermitian matrix. Deterministic
// sweep order, convergence on off-diagonal Frobenius mass below
// tol::jacobi_threshold * max(1, ||M||_F). Throws NonHermitianInput.
EigResult hermitian_eig(const ComplexMatrix& m);

// U = exp(-i H t) through the eigendecomposition of H; exact up to floating
// point for Hermitian H. Throws NonHermitianInput.
ComplexMatrix expm_hermitian(const ComplexMatrix& h, double t);

// rho = |phi><phi|. Throws NotNormalized.
DensityMatrix density_from_state(const StateVector& phi);

}  // namespace zeno::qalg
