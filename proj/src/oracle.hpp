#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "measurement.hpp"
#include "scenario.hpp"

namespace ifm::oracle {

// Dense reference evolution over the flattened basis
//   index = photon * 3^n + atom_0 * 3^(n-1) + ... + atom_{n-1}
// with photon digits 0..5 = u+, u-, l+, l-, S+, S- and atom digits
// 0..2 = m+, m-, g. All elements are explicit matrices; nothing is shared
// with the sparse pipeline.
struct DenseEvolution {
  explicit DenseEvolution(const scenario::Scenario& sc);

  std::size_t atom_count = 0;
  Eigen::Index dim = 0;
  Eigen::MatrixXcd beam_splitter;
  Eigen::MatrixXcd interaction;
  Eigen::MatrixXcd composed;  // BS2 * interaction * BS1
  Eigen::VectorXcd input;

  Eigen::VectorXcd output() const { return composed * input; }

  // Columns of `composed` for inputs without scattered-photon components;
  // the evolution is isometric on that subspace.
  Eigen::MatrixXcd composed_on_unscattered() const;
};

// Recomputes every outcome of the scenario on the dense path. The result
// matches measure() on the sparse pipeline's evolved state (same ordering,
// same posterior conventions).
std::vector<measurement::Outcome> oracle_run(const scenario::Scenario& sc);

struct Comparison {
  double max_deviation = 0.0;
  std::string worst;  // human-readable location of the largest deviation

  bool within(double tol) const { return max_deviation <= tol; }
};

// Runs the sparse pipeline and the dense reference and compares budgets,
// probabilities, and posterior matrices entrywise.
Comparison compare_with_pipeline(const scenario::Scenario& sc);

}  // namespace ifm::oracle
