#pragma once

#include "report.hpp"
#include "scenario.hpp"
#include "state.hpp"

namespace ifm::scenario {

struct RunOptions {
  double prune_threshold = kPruneThreshold;  // 0 disables pruning
};

// Normalized internal state of the registered atoms (before the photon).
JointState initial_atom_state(const Scenario& sc, std::vector<std::string>* warnings = nullptr);

// Photon input tensored with the prepared atoms.
JointState initial_state(const Scenario& sc, std::vector<std::string>* warnings = nullptr,
                         double prune_threshold = kPruneThreshold);

// Full pass through the interferometer: first beam splitter, one interaction
// per declared object, second beam splitter.
JointState evolve(const Scenario& sc, std::vector<std::string>* warnings = nullptr,
                  double prune_threshold = kPruneThreshold);

// Detection plus per-outcome diagnostics. Deterministic: identical scenarios
// produce byte-identical machine reports.
Report run(const Scenario& sc, const RunOptions& options = {});

}  // namespace ifm::scenario
