#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "state.hpp"

namespace ifm {

// Hermitian positive matrix over an explicit labeled basis. The basis is the
// row-major product of the retained registers' labels.
class DensityMatrix {
 public:
  DensityMatrix(std::vector<RegisterDecl> registers, Eigen::MatrixXcd matrix);

  static DensityMatrix from_state(const JointState& s);

  const std::vector<RegisterDecl>& registers() const { return registers_; }
  const Eigen::MatrixXcd& matrix() const { return m_; }
  Eigen::Index dim() const { return m_.rows(); }

  // Product label tuples, one per row/column, in matrix order.
  const std::vector<LabelTuple>& basis() const { return basis_; }
  std::string basis_label(std::size_t index) const;  // labels joined with ","

  complexd entry(const LabelTuple& row, const LabelTuple& col) const;
  std::size_t basis_index(const LabelTuple& tuple) const;

  double trace_real() const;
  DensityMatrix normalized() const;  // rescaled to unit trace

  // Traces out every register not in `keep`; register order is preserved.
  DensityMatrix partial_trace(const std::vector<std::string>& keep) const;

  // Sub-block over the given labels per register (same register order).
  // The block is returned as-is, i.e. its trace is the retained population.
  DensityMatrix restricted(const std::vector<std::vector<std::string>>& labels_per_register) const;

  double hermiticity_defect() const;  // max_ij |m - m†|
  double min_eigenvalue() const;

  // Enforces Hermiticity, unit trace, and positivity tolerances.
  void validate(double herm_tol = kHermTol, double trace_tol = kNormTol,
                double psd_tol = kPsdTol) const;

 private:
  std::vector<RegisterDecl> registers_;
  std::vector<LabelTuple> basis_;
  Eigen::MatrixXcd m_;
};

DensityMatrix to_density(const JointState& s);
DensityMatrix partial_trace(const DensityMatrix& d, const std::vector<std::string>& keep);

}  // namespace ifm
