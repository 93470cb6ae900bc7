#pragma once

#include <map>
#include <string>
#include <vector>

#include "errors.hpp"
#include "types.hpp"

namespace ifm {

// One basis label per register, in register declaration order.
using LabelTuple = std::vector<std::string>;

// A linear map acting jointly on one or more registers. Columns are indexed
// by input label tuples (one label per target register), rows by output
// tuples. A rectangular map whose input tuples cover only a subspace may only
// be applied to states supported on that subspace. `out_basis`, when
// non-empty, replaces the declared basis of each target register (used for
// basis-changing maps such as circular -> linear relabeling).
struct LinearMap {
  std::vector<LabelTuple> in_labels;
  std::vector<LabelTuple> out_labels;
  std::vector<std::vector<complexd>> coeff;  // coeff[row][col]
  std::vector<RegisterDecl> out_basis;

  static LinearMap identity(const std::vector<std::string>& labels);
  // Single-register convenience: plain labels instead of 1-tuples.
  static LinearMap on_labels(const std::vector<std::string>& in,
                             const std::vector<std::string>& out,
                             std::vector<std::vector<complexd>> coefficients);

  std::size_t rows() const { return out_labels.size(); }
  std::size_t cols() const { return in_labels.size(); }

  // Columns pairwise orthonormal (map preserves norms on its domain).
  bool is_isometry(double tol = kNormTol) const;
};

// Pure state of a composite system, stored as a sparse map from label tuples
// to complex amplitudes. Registers are immutable once constructed; every
// operation returns a new value. Amplitudes below the pruning threshold are
// removed after each operation (threshold 0 disables pruning).
class JointState {
 public:
  using AmplitudeMap = std::map<LabelTuple, complexd>;

  JointState(std::vector<RegisterDecl> registers, AmplitudeMap amplitudes,
             double prune_threshold = kPruneThreshold);

  // Single register, single label, amplitude 1.
  static JointState basis_state(RegisterDecl reg, const std::string& label);
  // Single register with the given amplitudes.
  static JointState from_amplitudes(RegisterDecl reg,
                                    const std::map<std::string, complexd>& amps,
                                    double prune_threshold = kPruneThreshold);

  const std::vector<RegisterDecl>& registers() const { return registers_; }
  const AmplitudeMap& amplitudes() const { return amps_; }

  // Zero when the tuple is not stored.
  complexd amplitude(const LabelTuple& tuple) const;

  bool has_register(const std::string& name) const;
  std::size_t register_index(const std::string& name) const;  // throws
  const RegisterDecl& register_decl(const std::string& name) const;

  double norm() const;
  bool is_normalized(double tol = kNormTol) const;
  // Throws StateError on (near-)zero states.
  JointState normalized() const;

  // Applies `map` to the given registers (jointly, in the listed order);
  // all other registers are untouched. Throws StateError when a stored tuple
  // is not covered by the map's input labels.
  JointState apply_map(const std::vector<std::string>& reg_names,
                       const LinearMap& map) const;
  JointState apply_map(const std::string& reg_name, const LinearMap& map) const;

  double prune_threshold() const { return prune_threshold_; }
  JointState with_prune_threshold(double threshold) const;

 private:
  void validate() const;
  void prune();

  std::vector<RegisterDecl> registers_;
  AmplitudeMap amps_;
  double prune_threshold_;
};

// Product state over the disjoint union of registers; amplitudes are
// pairwise products.
JointState tensor(const JointState& a, const JointState& b);

// <a|b>; requires identical register declarations.
complexd inner_product(const JointState& a, const JointState& b);

}  // namespace ifm
