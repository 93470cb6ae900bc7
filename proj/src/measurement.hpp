#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "density.hpp"
#include "state.hpp"

namespace ifm::measurement {

enum class AnalysisBasis { none, circular, linear };

std::string analysis_label(AnalysisBasis basis);

// Both detectors share one polarization-analysis setting. Scattered modes
// never reach a detector; they form the dedicated `absorbed` outcome.
struct DetectorConfig {
  AnalysisBasis analysis = AnalysisBasis::none;

  bool operator==(const DetectorConfig&) const = default;
};

enum class OutcomeTag { absorbed, Du, Dl };

std::string tag_label(OutcomeTag tag);

struct Outcome {
  OutcomeTag tag = OutcomeTag::absorbed;
  // Set when the detectors are polarization-resolved ("sigma+", "x", ...).
  std::optional<std::string> polarization;
  double probability = 0.0;
  // Reduced state of the atom register(s) after this outcome. Omitted for
  // probabilities below kOutcomeProbFloor and for scenarios without atom
  // registers.
  std::optional<DensityMatrix> posterior;
};

// Projects onto the listed photon labels; the result is left unnormalized.
JointState project_photon(const JointState& s, const std::set<std::string>& photon_labels);

// Projective detection of the output state. Outcomes are listed as
// absorbed, Du, Dl (each port split by polarization when analysis is not
// `none`); probabilities sum to 1. Requires a normalized state.
std::vector<Outcome> measure(const JointState& s, const DetectorConfig& cfg);

struct OutcomeBudget {
  double absorbed = 0.0;
  double du = 0.0;
  double dl = 0.0;
};

// Probability partition {absorbed, Du, Dl}, independent of any analysis basis.
OutcomeBudget outcome_budget(const JointState& s);

// <target| posterior |target> for a normalized pure target over the same
// registers as the posterior.
double posterior_fidelity(const Outcome& outcome, const JointState& target);

}  // namespace ifm::measurement
