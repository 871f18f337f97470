#pragma once

// Measurement channels: ideal non-selective projection, selective sampled
// collapse, partial-strength measurement, subspace projection, and unitary
// bang-bang kicks. All channels are completely positive and trace preserving
// on valid inputs.

#include <cstdint>
#include <string>
#include <vector>

#include "zeno/qalg.hpp"

namespace zeno::measure {

// Complete set of mutually orthogonal projectors summing to the identity.
struct ProjectorSet {
  std::vector<qalg::ComplexMatrix> projectors;
  std::vector<std::string> labels;  // outcome names, parallel to projectors

  int dim() const { return projectors.empty() ? 0 : projectors.front().dim(); }
  // Checks idempotence, mutual orthogonality and completeness at
  // tol::projector. Throws InvalidProjectorSet.
  void validate() const;

  // Projectors onto each basis state of a d-level system.
  static ProjectorSet computational_basis(int dim);
};

struct MeasurementStrength {
  double eta = 1.0;  // in [0, 1]; 0 = no measurement, 1 = full projection
};

struct KickOperator {
  qalg::ComplexMatrix unitary;
};

struct OutcomeRecord {
  int outcome_index = -1;
  double probability = 0.0;
  qalg::DensityMatrix post_state;
};

// Deterministic counter-based generator (splitmix64 over a seed/counter
// pair). Streams with the same seed and counter sequence reproduce
// bit-identically; the counter is explicit so concurrent callers never share
// state.
class CounterRng {
 public:
  explicit CounterRng(uint64_t seed, uint64_t counter = 0) : seed_(seed), counter_(counter) {}

  uint64_t seed() const { return seed_; }
  uint64_t counter() const { return counter_; }

  uint64_t next_u64();
  double next_double();  // uniform in [0, 1)

  static uint64_t mix(uint64_t seed, uint64_t counter);

 private:
  uint64_t seed_;
  uint64_t counter_;
};

// Non-selective projection rho -> sum_k P_k rho P_k: block diagonals kept,
// cross blocks zeroed. Idempotent.
qalg::DensityMatrix project_nonselective(const qalg::DensityMatrix& rho, const ProjectorSet& ps);

// Samples outcome k with probability Tr(P_k rho) and collapses to
// P_k rho P_k / Tr(P_k rho). Throws DegenerateOutcome when every outcome
// probability is below 1e-12.
OutcomeRecord measure_selective(const qalg::DensityMatrix& rho, const ProjectorSet& ps,
                                CounterRng& rng);

// Partial-strength (weak) measurement: (1 - eta) rho + eta sum_k P_k rho P_k.
qalg::DensityMatrix partial_collapse(const qalg::DensityMatrix& rho, const ProjectorSet& ps,
                                     const MeasurementStrength& strength);

// Unitary kick rho -> K rho K†. Throws NonUnitaryKick.
qalg::DensityMatrix apply_kick(const qalg::DensityMatrix& rho, const KickOperator& kick);

// Two-element set {P_subspace, I - P_subspace} for a nonempty proper subset
// of levels. Throws EmptySubspace / FullSubspace / IndexOutOfRange.
ProjectorSet subspace_projectors(int dim, const std::vector<int>& subspace_indices);

}  // namespace zeno::measure
