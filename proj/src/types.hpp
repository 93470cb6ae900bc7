#pragma once

#include <complex>
#include <string>
#include <vector>

namespace ifm {

using complexd = std::complex<double>;

// Amplitudes below this magnitude are dropped after every state operation.
inline constexpr double kPruneThreshold = 1e-15;
// |norm - 1| bound for a state to count as normalized.
inline constexpr double kNormTol = 1e-12;
// Entrywise Hermiticity bound for density matrices.
inline constexpr double kHermTol = 1e-12;
// Eigenvalues of a density matrix may undershoot zero by at most this much.
inline constexpr double kPsdTol = 1e-10;
// Initial atomic states further off than this are renormalized with a warning.
inline constexpr double kInitialNormTol = 1e-9;
// Outcomes below this probability carry no posterior.
inline constexpr double kOutcomeProbFloor = 1e-12;

// A named register together with its ordered basis labels.
struct RegisterDecl {
  std::string name;
  std::vector<std::string> labels;

  bool has_label(const std::string& label) const;
  // Index of `label` in the declared basis; throws on unknown labels.
  std::size_t label_index(const std::string& label) const;

  bool operator==(const RegisterDecl&) const = default;
};

}  // namespace ifm
