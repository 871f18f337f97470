#include "zeno/qalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace zeno::qalg {

ComplexMatrix::ComplexMatrix(int dim, std::vector<complexd> entries)
    : dim_(dim), entries_(std::move(entries)) {
  if (dim < 0 || entries_.size() != static_cast<size_t>(dim) * dim) {
    throw DimensionMismatch("ComplexMatrix: entry count does not match dim*dim");
  }
}

ComplexMatrix ComplexMatrix::from_rows(
    std::initializer_list<std::initializer_list<complexd>> rows) {
  const int d = static_cast<int>(rows.size());
  ComplexMatrix m(d);
  int r = 0;
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != d) {
      throw DimensionMismatch("ComplexMatrix::from_rows: ragged rows");
    }
    int c = 0;
    for (const auto& value : row) m.at(r, c++) = value;
    ++r;
  }
  return m;
}

ComplexMatrix ComplexMatrix::identity(int dim) {
  ComplexMatrix m(dim);
  for (int i = 0; i < dim; ++i) m.at(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(dim_);
  for (int r = 0; r < dim_; ++r)
    for (int c = 0; c < dim_; ++c) out.at(c, r) = std::conj(at(r, c));
  return out;
}

complexd ComplexMatrix::trace() const {
  complexd sum = 0.0;
  for (int i = 0; i < dim_; ++i) sum += at(i, i);
  return sum;
}

double ComplexMatrix::frobenius_norm() const {
  double sum = 0.0;
  for (const complexd& z : entries_) sum += std::norm(z);
  return std::sqrt(sum);
}

double ComplexMatrix::max_abs() const {
  double best = 0.0;
  for (const complexd& z : entries_) best = std::max(best, std::abs(z));
  return best;
}

bool ComplexMatrix::is_hermitian(double tolerance) const {
  for (int r = 0; r < dim_; ++r)
    for (int c = r; c < dim_; ++c)
      if (std::abs(at(r, c) - std::conj(at(c, r))) > tolerance) return false;
  return true;
}

bool ComplexMatrix::is_unitary(double tolerance) const {
  const ComplexMatrix gram = adjoint() * (*this);
  return max_abs_diff(gram, identity(dim_)) <= tolerance;
}

bool ComplexMatrix::is_positive_semidefinite(double tolerance) const {
  if (!is_hermitian(tol::hermitian)) return false;
  const EigResult eig = hermitian_eig(*this);
  return eig.eigenvalues.front() >= -tolerance;
}

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("matrix add: dimension mismatch");
  ComplexMatrix out = a;
  for (size_t i = 0; i < out.entries().size(); ++i) out.entries()[i] += b.entries()[i];
  return out;
}

ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("matrix sub: dimension mismatch");
  ComplexMatrix out = a;
  for (size_t i = 0; i < out.entries().size(); ++i) out.entries()[i] -= b.entries()[i];
  return out;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.dim());
  mul_into(a, b, out);
  return out;
}

ComplexMatrix operator*(complexd scale, const ComplexMatrix& m) {
  ComplexMatrix out = m;
  for (complexd& z : out.entries()) z *= scale;
  return out;
}

void mul_into(const ComplexMatrix& a, const ComplexMatrix& b, ComplexMatrix& out) {
  const int d = a.dim();
  if (b.dim() != d) throw DimensionMismatch("matrix mul: dimension mismatch");
  if (out.dim() != d) out = ComplexMatrix(d);
  const complexd* pa = a.entries().data();
  const complexd* pb = b.entries().data();
  complexd* po = out.entries().data();
  // hand-rolled complex MAC: avoids the library __muldc3 call in the
  // integrator's hot loop
  for (int r = 0; r < d; ++r) {
    for (int c = 0; c < d; ++c) po[r * d + c] = 0.0;
    for (int k = 0; k < d; ++k) {
      const double ar = pa[r * d + k].real();
      const double ai = pa[r * d + k].imag();
      if (ar == 0.0 && ai == 0.0) continue;
      for (int c = 0; c < d; ++c) {
        const double br = pb[k * d + c].real();
        const double bi = pb[k * d + c].imag();
        po[r * d + c] += complexd{ar * br - ai * bi, ar * bi + ai * br};
      }
    }
  }
}

void add_scaled(ComplexMatrix& out, complexd scale, const ComplexMatrix& m) {
  if (out.dim() != m.dim()) throw DimensionMismatch("add_scaled: dimension mismatch");
  const double sr = scale.real();
  const double si = scale.imag();
  const complexd* pm = m.entries().data();
  complexd* po = out.entries().data();
  const size_t count = out.entries().size();
  if (si == 0.0) {
    for (size_t i = 0; i < count; ++i) {
      po[i] += complexd{sr * pm[i].real(), sr * pm[i].imag()};
    }
  } else {
    for (size_t i = 0; i < count; ++i) {
      po[i] += complexd{sr * pm[i].real() - si * pm[i].imag(),
                        sr * pm[i].imag() + si * pm[i].real()};
    }
  }
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("max_abs_diff: dimension mismatch");
  double best = 0.0;
  for (size_t i = 0; i < a.entries().size(); ++i) {
    best = std::max(best, std::abs(a.entries()[i] - b.entries()[i]));
  }
  return best;
}

double StateVector::squared_norm() const {
  double sum = 0.0;
  for (const complexd& z : amplitudes) sum += std::norm(z);
  return sum;
}

bool StateVector::is_normalized(double tolerance) const {
  return std::abs(squared_norm() - 1.0) <= tolerance;
}

StateVector StateVector::basis(int dim, int index) {
  StateVector v;
  v.amplitudes.assign(dim, complexd{});
  v.amplitudes[index] = 1.0;
  return v;
}

complexd inner_product(const StateVector& a, const StateVector& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("inner_product: dimension mismatch");
  complexd sum = 0.0;
  for (int i = 0; i < a.dim(); ++i) sum += std::conj(a.amplitudes[i]) * b.amplitudes[i];
  return sum;
}

StateVector apply(const ComplexMatrix& m, const StateVector& v) {
  if (m.dim() != v.dim()) throw DimensionMismatch("apply: dimension mismatch");
  StateVector out;
  out.amplitudes.assign(v.dim(), complexd{});
  for (int r = 0; r < m.dim(); ++r) {
    complexd sum = 0.0;
    for (int c = 0; c < m.dim(); ++c) sum += m.at(r, c) * v.amplitudes[c];
    out.amplitudes[r] = sum;
  }
  return out;
}

double DensityMatrix::purity() const {
  // Tr(rho^2) for Hermitian rho equals the squared Frobenius norm.
  const double f = mat.frobenius_norm();
  return f * f;
}

double DensityMatrix::min_eigenvalue() const {
  return hermitian_eig(mat).eigenvalues.front();
}

bool DensityMatrix::is_valid(double hermitian_tolerance, double eig_floor) const {
  if (!mat.is_hermitian(hermitian_tolerance)) return false;
  if (std::abs(mat.trace() - complexd{1.0, 0.0}) > tol::density_trace) return false;
  return min_eigenvalue() >= eig_floor;
}

void DensityMatrix::validate(double hermitian_tolerance, double eig_floor) const {
  if (!mat.is_hermitian(hermitian_tolerance)) {
    throw InvalidDensity("density matrix is not Hermitian within " +
                         std::to_string(hermitian_tolerance));
  }
  if (std::abs(mat.trace() - complexd{1.0, 0.0}) > tol::density_trace) {
    throw InvalidDensity("density matrix trace deviates from 1 beyond tolerance");
  }
  const double min_eig = min_eigenvalue();
  if (min_eig < eig_floor) {
    throw InvalidDensity("density matrix has eigenvalue " + std::to_string(min_eig) +
                         " below floor");
  }
}

namespace {

double offdiagonal_mass(const ComplexMatrix& a) {
  double sum = 0.0;
  for (int r = 0; r < a.dim(); ++r)
    for (int c = 0; c < a.dim(); ++c)
      if (r != c) sum += std::norm(a.at(r, c));
  return std::sqrt(sum);
}

// One cyclic sweep of complex Jacobi rotations over all pairs p < q in a
// fixed order. Rotations with |a_pq| <= skip_below are skipped; the caller
// picks skip_below so that the skipped mass stays under the convergence
// threshold.
void jacobi_sweep(ComplexMatrix& a, ComplexMatrix& v, double skip_below) {
  const int d = a.dim();
  for (int p = 0; p < d - 1; ++p) {
    for (int q = p + 1; q < d; ++q) {
      const complexd apq = a.at(p, q);
      const double r = std::abs(apq);
      if (r <= skip_below) continue;

      // Fold the phase of a_pq into the rotation so the angle stays real:
      // U = [[c, -s*phase], [s*conj(phase), c]] on the (p,q) plane.
      const complexd phase = apq / r;
      const double alpha = a.at(p, p).real();
      const double beta = a.at(q, q).real();
      const double tau = (alpha - beta) / (2.0 * r);
      const double sign = tau >= 0.0 ? 1.0 : -1.0;
      const double t = sign / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
      const double c = 1.0 / std::sqrt(1.0 + t * t);
      const double s = t * c;
      const complexd s_fwd = s * phase;        // multiplies the q column into p
      const complexd s_bwd = std::conj(s_fwd);

      // A <- A U (columns p, q).
      for (int k = 0; k < d; ++k) {
        const complexd akp = a.at(k, p);
        const complexd akq = a.at(k, q);
        a.at(k, p) = c * akp + s_bwd * akq;
        a.at(k, q) = -s_fwd * akp + c * akq;
      }
      // A <- U† A (rows p, q).
      for (int k = 0; k < d; ++k) {
        const complexd apk = a.at(p, k);
        const complexd aqk = a.at(q, k);
        a.at(p, k) = c * apk + s_fwd * aqk;
        a.at(q, k) = -s_bwd * apk + c * aqk;
      }
      // The rotated 2x2 block is known in closed form; writing it directly
      // avoids rounding residue on the pivot.
      a.at(p, p) = alpha + t * r;
      a.at(q, q) = beta - t * r;
      a.at(p, q) = 0.0;
      a.at(q, p) = 0.0;

      // V <- V U.
      for (int k = 0; k < d; ++k) {
        const complexd vkp = v.at(k, p);
        const complexd vkq = v.at(k, q);
        v.at(k, p) = c * vkp + s_bwd * vkq;
        v.at(k, q) = -s_fwd * vkp + c * vkq;
      }
    }
  }
}

}  // namespace

EigResult hermitian_eig(const ComplexMatrix& m) {
  if (m.dim() == 0) throw DimensionMismatch("hermitian_eig: empty matrix");
  if (!m.is_hermitian(tol::hermitian)) {
    throw NonHermitianInput("hermitian_eig: input is not Hermitian within tolerance");
  }
  const int d = m.dim();
  ComplexMatrix a = m;
  // Symmetrize so rounding asymmetry within the input tolerance cannot bias
  // the sweeps; the diagonal is forced real.
  for (int r = 0; r < d; ++r) {
    a.at(r, r) = complexd{a.at(r, r).real(), 0.0};
    for (int c = r + 1; c < d; ++c) {
      const complexd avg = 0.5 * (a.at(r, c) + std::conj(a.at(c, r)));
      a.at(r, c) = avg;
      a.at(c, r) = std::conj(avg);
    }
  }

  ComplexMatrix v = ComplexMatrix::identity(d);
  const double threshold = tol::jacobi_threshold * std::max(1.0, a.frobenius_norm());
  const double skip_below = d > 1 ? threshold / (10.0 * d * d) : 0.0;
  constexpr int max_sweeps = 100;

  int sweep = 0;
  while (offdiagonal_mass(a) > threshold) {
    if (++sweep > max_sweeps) {
      throw ZenoError("hermitian_eig: Jacobi iteration failed to converge");
    }
    jacobi_sweep(a, v, skip_below);
  }

  // Sort eigenvalues ascending; reorder eigenvector columns to match.
  std::vector<int> order(d);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&a](int i, int j) { return a.at(i, i).real() < a.at(j, j).real(); });

  EigResult result;
  result.eigenvalues.resize(d);
  result.eigenvectors = ComplexMatrix(d);
  for (int c = 0; c < d; ++c) {
    result.eigenvalues[c] = a.at(order[c], order[c]).real();
    for (int r = 0; r < d; ++r) result.eigenvectors.at(r, c) = v.at(r, order[c]);
  }
  return result;
}

ComplexMatrix expm_hermitian(const ComplexMatrix& h, double t) {
  if (!h.is_hermitian(tol::hermitian)) {
    throw NonHermitianInput("expm_hermitian: input is not Hermitian within tolerance");
  }
  const EigResult eig = hermitian_eig(h);
  const int d = h.dim();
  ComplexMatrix phased(d);
  for (int r = 0; r < d; ++r) {
    const complexd factor = std::exp(complexd{0.0, -eig.eigenvalues[r] * t});
    for (int c = 0; c < d; ++c) phased.at(r, c) = factor * std::conj(eig.eigenvectors.at(c, r));
  }
  return eig.eigenvectors * phased;
}

DensityMatrix density_from_state(const StateVector& phi) {
  if (!phi.is_normalized()) {
    throw NotNormalized("density_from_state: state vector is not normalized");
  }
  const int d = phi.dim();
  DensityMatrix rho{ComplexMatrix(d)};
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c)
      rho.mat.at(r, c) = phi.amplitudes[r] * std::conj(phi.amplitudes[c]);
  return rho;
}

}  // namespace zeno::qalg
