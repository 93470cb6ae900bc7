#pragma once

#include <optional>

#include "density.hpp"
#include "state.hpp"

namespace ifm::metrics {

// Tr(rho^2).
double purity(const DensityMatrix& d);

// Sum of |rho_ij| over i != j on the {m+, m-} subspace of a single atom
// register. Residual |g> population >= 1e-12 is an error.
double l1_coherence(const DensityMatrix& d);

// <psi| rho |psi> for a normalized pure target over the same registers.
double fidelity(const DensityMatrix& d, const JointState& target);

// Two-qubit concurrence via the spin-flip eigenvalue formula. Requires a
// 4-dimensional matrix over two 2-level registers ({m+, m-} each).
double concurrence(const DensityMatrix& d);

// Scalar diagnostics attached to each reported outcome. l1_coherence is
// omitted when the probe atom's reduced state has |g> population (absorbed
// outcomes); concurrence is present for two-atom scenarios whose posterior
// stays in the qubit subspace.
struct MetricReport {
  double purity = 0.0;
  std::optional<double> l1_coherence;
  double fidelity_vs_initial = 0.0;
  std::optional<double> concurrence;
};

}  // namespace ifm::metrics
