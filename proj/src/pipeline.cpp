#include "pipeline.hpp"

namespace ifm::scenario {

namespace {

constexpr const char* kConventionNote =
    "polarization: a(sigma+) = -(a_x + i a_y)/sqrt2, a(sigma-) = (a_x - i a_y)/sqrt2; "
    "beam splitter: u' = (i u + l)/sqrt2, l' = (u + i l)/sqrt2; "
    "scattered modes S+/S- are filtered from both detectors";

matter::AtomInitialState initial_spec(const Scenario& sc) {
  matter::AtomInitialState spec;
  if (!sc.joint_initial.empty()) {
    spec.joint = sc.joint_initial;
  } else {
    for (const auto& atom : sc.atoms) {
      if (atom.model.has_register()) spec.per_atom.push_back(atom.initial);
    }
  }
  return spec;
}

// The atom whose coherence the experiment probes: the first registered
// absorber, falling back to the first registered atom.
std::optional<std::string> probe_register(const Scenario& sc) {
  for (const auto& atom : sc.atoms) {
    if (atom.model.has_register() && atom.model.is_absorbing()) return atom.model.register_id;
  }
  for (const auto& atom : sc.atoms) {
    if (atom.model.has_register()) return atom.model.register_id;
  }
  return std::nullopt;
}

JointState target_state(const Scenario& sc, const std::map<LabelTuple, complexd>& amps) {
  std::vector<RegisterDecl> regs;
  for (const auto& model : registered_atoms(sc)) {
    regs.push_back(matter::atom_register(model.register_id));
  }
  JointState::AmplitudeMap m;
  for (const auto& [tuple, amp] : amps) m[tuple] = amp;
  return JointState(std::move(regs), std::move(m)).normalized();
}

std::optional<metrics::MetricReport> row_metrics(const measurement::Outcome& outcome,
                                                 const JointState& initial_atoms,
                                                 const std::optional<std::string>& probe) {
  if (!outcome.posterior) return std::nullopt;
  const DensityMatrix& posterior = *outcome.posterior;

  metrics::MetricReport m;
  m.purity = metrics::purity(posterior);
  m.fidelity_vs_initial = metrics::fidelity(posterior, initial_atoms);

  if (probe) {
    const DensityMatrix reduced =
        posterior.registers().size() > 1 ? posterior.partial_trace({*probe}) : posterior;
    const auto& reg = reduced.registers()[0];
    double g_pop = 0.0;
    if (reg.has_label("g")) {
      const auto g = static_cast<Eigen::Index>(reg.label_index("g"));
      g_pop = reduced.matrix()(g, g).real();
    }
    if (g_pop < 1e-12) m.l1_coherence = metrics::l1_coherence(reduced);
  }

  if (posterior.registers().size() == 2) {
    const DensityMatrix block = posterior.restricted({{"m+", "m-"}, {"m+", "m-"}});
    if (std::abs(posterior.trace_real() - block.trace_real()) < 1e-12) {
      m.concurrence = metrics::concurrence(block);
    }
  }
  return m;
}

}  // namespace

JointState initial_atom_state(const Scenario& sc, std::vector<std::string>* warnings) {
  const auto models = registered_atoms(sc);
  if (models.empty()) throw StateError("scenario has no registered atoms");
  return matter::prepare_atoms(initial_spec(sc), models, warnings);
}

JointState initial_state(const Scenario& sc, std::vector<std::string>* warnings,
                         double prune_threshold) {
  const JointState photon =
      optics::photon_input(sc.port, sc.polarization).with_prune_threshold(prune_threshold);
  if (registered_atoms(sc).empty()) return photon;
  return tensor(photon, initial_atom_state(sc, warnings));
}

JointState evolve(const Scenario& sc, std::vector<std::string>* warnings,
                  double prune_threshold) {
  validate(sc);
  JointState state = optics::beam_splitter(initial_state(sc, warnings, prune_threshold));
  for (const auto& atom : sc.atoms) {
    state = matter::interact(state, atom.model);
  }
  return optics::beam_splitter(state);
}

Report run(const Scenario& sc, const RunOptions& options) {
  Report report;
  report.scenario = sc;
  report.convention = kConventionNote;

  const JointState evolved = evolve(sc, &report.warnings, options.prune_threshold);
  report.budget = measurement::outcome_budget(evolved);
  const auto outcomes = measurement::measure(evolved, sc.detector);

  std::optional<JointState> initial_atoms;
  if (!registered_atoms(sc).empty()) initial_atoms = initial_atom_state(sc);
  const auto probe = probe_register(sc);

  for (const auto& outcome : outcomes) {
    OutcomeRow row;
    row.outcome = outcome;
    if (initial_atoms) {
      row.metric = row_metrics(outcome, *initial_atoms, probe);
      if (outcome.posterior) {
        for (const auto& [name, amps] : sc.report_targets) {
          row.target_fidelities.emplace_back(
              name, metrics::fidelity(*outcome.posterior, target_state(sc, amps)));
        }
      }
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace ifm::scenario
