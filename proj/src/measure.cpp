#include "zeno/measure.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

namespace zeno::measure {

using qalg::complexd;
using qalg::ComplexMatrix;
using qalg::DensityMatrix;

void ProjectorSet::validate() const {
  if (projectors.empty()) throw InvalidProjectorSet("ProjectorSet: no projectors");
  if (!labels.empty() && labels.size() != projectors.size()) {
    throw InvalidProjectorSet("ProjectorSet: label count differs from projector count");
  }
  const int d = projectors.front().dim();
  ComplexMatrix sum(d);
  for (size_t i = 0; i < projectors.size(); ++i) {
    const ComplexMatrix& p = projectors[i];
    if (p.dim() != d) throw InvalidProjectorSet("ProjectorSet: mixed dimensions");
    if (!p.is_hermitian(tol::projector)) {
      throw InvalidProjectorSet("ProjectorSet: projector " + std::to_string(i) +
                                " is not Hermitian");
    }
    if (qalg::max_abs_diff(p * p, p) > tol::projector) {
      throw InvalidProjectorSet("ProjectorSet: projector " + std::to_string(i) +
                                " is not idempotent");
    }
    for (size_t j = i + 1; j < projectors.size(); ++j) {
      if ((p * projectors[j]).max_abs() > tol::projector) {
        throw InvalidProjectorSet("ProjectorSet: projectors " + std::to_string(i) + " and " +
                                  std::to_string(j) + " are not orthogonal");
      }
    }
    sum = sum + p;
  }
  if (qalg::max_abs_diff(sum, ComplexMatrix::identity(d)) > tol::projector) {
    throw InvalidProjectorSet("ProjectorSet: projectors do not sum to the identity");
  }
}

ProjectorSet ProjectorSet::computational_basis(int dim) {
  ProjectorSet ps;
  for (int k = 0; k < dim; ++k) {
    ComplexMatrix p(dim);
    p.at(k, k) = 1.0;
    ps.projectors.push_back(std::move(p));
    ps.labels.push_back("level" + std::to_string(k + 1));
  }
  return ps;
}

uint64_t CounterRng::mix(uint64_t seed, uint64_t counter) {
  uint64_t x = seed + (counter + 1) * 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

uint64_t CounterRng::next_u64() { return mix(seed_, counter_++); }

double CounterRng::next_double() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

namespace {

void check_channel_input(const DensityMatrix& rho, const ProjectorSet& ps) {
  ps.validate();
  if (rho.dim() != ps.dim()) {
    throw DimensionMismatch("measurement channel: state and projector dimensions differ");
  }
}

}  // namespace

DensityMatrix project_nonselective(const DensityMatrix& rho, const ProjectorSet& ps) {
  check_channel_input(rho, ps);
  ComplexMatrix out(rho.dim());
  for (const ComplexMatrix& p : ps.projectors) {
    qalg::add_scaled(out, 1.0, p * rho.mat * p);
  }
  return DensityMatrix{out};
}

OutcomeRecord measure_selective(const DensityMatrix& rho, const ProjectorSet& ps,
                                CounterRng& rng) {
  check_channel_input(rho, ps);
  std::vector<double> probabilities(ps.projectors.size());
  double total = 0.0;
  for (size_t k = 0; k < ps.projectors.size(); ++k) {
    probabilities[k] = std::max(0.0, (ps.projectors[k] * rho.mat).trace().real());
    total += probabilities[k];
  }
  if (total < 1e-12) {
    throw DegenerateOutcome("measure_selective: all outcome probabilities are below 1e-12");
  }

  const double draw = rng.next_double() * total;
  double cumulative = 0.0;
  size_t outcome = ps.projectors.size() - 1;
  for (size_t k = 0; k < ps.projectors.size(); ++k) {
    cumulative += probabilities[k];
    if (draw < cumulative) {
      outcome = k;
      break;
    }
  }

  const ComplexMatrix& p = ps.projectors[outcome];
  ComplexMatrix collapsed = p * rho.mat * p;
  collapsed = (1.0 / probabilities[outcome]) * collapsed;
  return OutcomeRecord{static_cast<int>(outcome), probabilities[outcome],
                       DensityMatrix{collapsed}};
}

DensityMatrix partial_collapse(const DensityMatrix& rho, const ProjectorSet& ps,
                               const MeasurementStrength& strength) {
  if (!(strength.eta >= 0.0 && strength.eta <= 1.0)) {
    throw StrengthOutOfRange("partial_collapse: eta must lie in [0, 1]");
  }
  check_channel_input(rho, ps);
  const DensityMatrix projected = project_nonselective(rho, ps);
  ComplexMatrix out = (1.0 - strength.eta) * rho.mat;
  qalg::add_scaled(out, strength.eta, projected.mat);
  return DensityMatrix{out};
}

DensityMatrix apply_kick(const DensityMatrix& rho, const KickOperator& kick) {
  if (kick.unitary.dim() != rho.dim()) {
    throw DimensionMismatch("apply_kick: state and kick dimensions differ");
  }
  if (!kick.unitary.is_unitary(tol::unitary)) {
    throw NonUnitaryKick("apply_kick: kick operator is not unitary within tolerance");
  }
  return DensityMatrix{kick.unitary * rho.mat * kick.unitary.adjoint()};
}

ProjectorSet subspace_projectors(int dim, const std::vector<int>& subspace_indices) {
  if (subspace_indices.empty()) {
    throw EmptySubspace("subspace_projectors: subspace must be nonempty");
  }
  std::set<int> unique(subspace_indices.begin(), subspace_indices.end());
  for (int index : unique) {
    if (index < 0 || index >= dim) {
      throw IndexOutOfRange("subspace_projectors: index " + std::to_string(index) +
                            " outside [0, " + std::to_string(dim) + ")");
    }
  }
  if (static_cast<int>(unique.size()) >= dim) {
    throw FullSubspace("subspace_projectors: subspace must be a proper subset");
  }

  ComplexMatrix inside(dim);
  for (int index : unique) inside.at(index, index) = 1.0;
  const ComplexMatrix outside = ComplexMatrix::identity(dim) - inside;

  ProjectorSet ps;
  ps.projectors = {inside, outside};
  ps.labels = {"subspace", "complement"};
  return ps;
}

}  // namespace zeno::measure
