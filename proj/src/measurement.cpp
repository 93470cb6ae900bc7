#include "measurement.hpp"

#include <cmath>

#include "metrics.hpp"
#include "optics.hpp"

namespace ifm::measurement {

namespace {

std::vector<std::string> atom_register_names(const JointState& s) {
  std::vector<std::string> names;
  for (const auto& reg : s.registers()) {
    if (reg.name != optics::kPhotonRegister) names.push_back(reg.name);
  }
  return names;
}

}  // namespace

std::string analysis_label(AnalysisBasis basis) {
  switch (basis) {
    case AnalysisBasis::none:
      return "none";
    case AnalysisBasis::circular:
      return "circular";
    case AnalysisBasis::linear:
      return "linear";
  }
  return "?";
}

std::string tag_label(OutcomeTag tag) {
  switch (tag) {
    case OutcomeTag::absorbed:
      return "absorbed";
    case OutcomeTag::Du:
      return "Du";
    case OutcomeTag::Dl:
      return "Dl";
  }
  return "?";
}

JointState project_photon(const JointState& s, const std::set<std::string>& photon_labels) {
  const std::size_t idx = s.register_index(optics::kPhotonRegister);
  JointState::AmplitudeMap amps;
  for (const auto& [tuple, amp] : s.amplitudes()) {
    if (photon_labels.count(tuple[idx])) amps[tuple] = amp;
  }
  return JointState(s.registers(), std::move(amps), s.prune_threshold());
}

std::vector<Outcome> measure(const JointState& s, const DetectorConfig& cfg) {
  if (!s.is_normalized()) throw StateError("measure: state is not normalized");
  if (!s.has_register(optics::kPhotonRegister)) {
    throw StateError("measure: state has no photon register");
  }

  // Move to the analysis basis; `none` measures port occupation only, for
  // which either basis gives identical projections (we use circular).
  JointState t = s;
  if (cfg.analysis == AnalysisBasis::linear) {
    if (!optics::photon_basis_is_linear(t)) t = optics::circular_to_linear(t);
  } else {
    if (optics::photon_basis_is_linear(t)) t = optics::linear_to_circular(t);
  }

  const auto atoms = atom_register_names(t);
  std::vector<Outcome> outcomes;
  auto add = [&](OutcomeTag tag, std::optional<std::string> pol,
                 const std::set<std::string>& labels) {
    const JointState proj = project_photon(t, labels);
    const double n = proj.norm();
    Outcome o;
    o.tag = tag;
    o.polarization = std::move(pol);
    o.probability = n * n;
    if (o.probability >= kOutcomeProbFloor && !atoms.empty()) {
      DensityMatrix posterior = to_density(proj.normalized()).partial_trace(atoms);
      posterior.validate();
      o.posterior = std::move(posterior);
    }
    outcomes.push_back(std::move(o));
  };

  add(OutcomeTag::absorbed, std::nullopt, {"S+", "S-"});
  switch (cfg.analysis) {
    case AnalysisBasis::none:
      add(OutcomeTag::Du, std::nullopt, {"u+", "u-"});
      add(OutcomeTag::Dl, std::nullopt, {"l+", "l-"});
      break;
    case AnalysisBasis::circular:
      add(OutcomeTag::Du, "sigma+", {"u+"});
      add(OutcomeTag::Du, "sigma-", {"u-"});
      add(OutcomeTag::Dl, "sigma+", {"l+"});
      add(OutcomeTag::Dl, "sigma-", {"l-"});
      break;
    case AnalysisBasis::linear:
      add(OutcomeTag::Du, "x", {"ux"});
      add(OutcomeTag::Du, "y", {"uy"});
      add(OutcomeTag::Dl, "x", {"lx"});
      add(OutcomeTag::Dl, "y", {"ly"});
      break;
  }
  return outcomes;
}

OutcomeBudget outcome_budget(const JointState& s) {
  if (!s.is_normalized()) throw StateError("outcome_budget: state is not normalized");
  const std::size_t idx = s.register_index(optics::kPhotonRegister);
  OutcomeBudget budget;
  for (const auto& [tuple, amp] : s.amplitudes()) {
    const double p = std::norm(amp);
    switch (tuple[idx][0]) {
      case 'S':
        budget.absorbed += p;
        break;
      case 'u':
        budget.du += p;
        break;
      case 'l':
        budget.dl += p;
        break;
      default:
        throw StateError("outcome_budget: unexpected photon label '" + tuple[idx] + "'");
    }
  }
  return budget;
}

double posterior_fidelity(const Outcome& outcome, const JointState& target) {
  if (!outcome.posterior) {
    throw StateError("posterior_fidelity: outcome carries no posterior");
  }
  return metrics::fidelity(*outcome.posterior, target);
}

}  // namespace ifm::measurement
