#pragma once

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "matter.hpp"
#include "measurement.hpp"
#include "optics.hpp"

namespace ifm::scenario {

struct AtomSpec {
  matter::AtomModel model;
  // Amplitudes over {m+, m-, g}; empty for classical absorbers and for
  // scenarios with a joint (entangled) preparation.
  std::map<std::string, complexd> initial;
};

// Declarative experiment description: photon input, the objects in (or
// outside) the interferometer arms, and the detection setting.
struct Scenario {
  std::string name;  // optional; canned scenarios carry theirs
  optics::Port port = optics::Port::lower;
  optics::PolarizationSpec polarization;
  std::vector<AtomSpec> atoms;
  // Joint amplitudes over all registered atoms (entangled preparation);
  // mutually exclusive with per-atom `initial` maps.
  std::map<LabelTuple, complexd> joint_initial;
  measurement::DetectorConfig detector;
  // Extra pure states reported as fidelity columns, keyed by display name.
  std::vector<std::pair<std::string, std::map<LabelTuple, complexd>>> report_targets;
};

// Atom models that carry a register, in declaration order.
std::vector<matter::AtomModel> registered_atoms(const Scenario& sc);

// Structural checks (register uniqueness, arm constraints, preparation
// completeness, ...). Throws ValidationError with a field path.
void validate(const Scenario& sc);

// Parses the JSON scenario format. Syntax errors report line/column;
// semantic errors report the offending field path. Unknown fields are
// rejected. The result is validated.
Scenario parse_scenario(std::string_view text);

// Canonical JSON echo of a scenario; parse_scenario(render_scenario(sc))
// reproduces sc.
std::string render_scenario(const Scenario& sc);

// Built-in experiment library.
const std::vector<std::string>& canned_names();
Scenario canned(const std::string& name);

}  // namespace ifm::scenario
