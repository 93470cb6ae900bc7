#include "matter.hpp"

#include <cmath>
#include <sstream>

namespace ifm::matter {

namespace {

using optics::PolarizationSpec;

// (photon label, atom label) -> (photon label, atom label) rewrites; identity
// on every pair not listed.
using MoveList = std::vector<std::pair<LabelTuple, LabelTuple>>;

LinearMap joint_map_from_moves(const std::vector<std::string>& photon_labels,
                               const std::vector<std::string>& atom_labels,
                               const MoveList& moves) {
  std::vector<LabelTuple> product;
  for (const auto& p : photon_labels) {
    for (const auto& a : atom_labels) product.push_back({p, a});
  }
  std::map<LabelTuple, std::size_t> index;
  for (std::size_t i = 0; i < product.size(); ++i) index[product[i]] = i;

  std::vector<std::vector<complexd>> coeff(
      product.size(), std::vector<complexd>(product.size(), complexd{0.0, 0.0}));
  for (std::size_t i = 0; i < product.size(); ++i) coeff[i][i] = 1.0;
  for (const auto& [src, dst] : moves) {
    const std::size_t s = index.at(src), d = index.at(dst);
    coeff[s][s] = 0.0;
    coeff[d][s] = 1.0;
  }
  LinearMap m;
  m.in_labels = product;
  m.out_labels = product;
  m.coeff = std::move(coeff);
  return m;
}

LinearMap photon_map_from_moves(const std::vector<std::string>& photon_labels,
                                const std::vector<std::pair<std::string, std::string>>& moves) {
  std::vector<std::vector<complexd>> coeff(
      photon_labels.size(), std::vector<complexd>(photon_labels.size(), complexd{0.0, 0.0}));
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < photon_labels.size(); ++i) index[photon_labels[i]] = i;
  for (std::size_t i = 0; i < photon_labels.size(); ++i) coeff[i][i] = 1.0;
  for (const auto& [src, dst] : moves) {
    const std::size_t s = index.at(src), d = index.at(dst);
    coeff[s][s] = 0.0;
    coeff[d][s] = 1.0;
  }
  return LinearMap::on_labels(photon_labels, photon_labels, std::move(coeff));
}

std::string arm_prefix(Arm arm) {
  switch (arm) {
    case Arm::upper:
      return "u";
    case Arm::lower:
      return "l";
    case Arm::outside:
      break;
  }
  throw StateError("interact: object outside the interferometer has no arm");
}

}  // namespace

const std::vector<std::string>& atom_basis() {
  static const std::vector<std::string> basis{"m+", "m-", "g"};
  return basis;
}

RegisterDecl atom_register(const std::string& name) { return {name, atom_basis()}; }

std::string arm_label(Arm arm) {
  switch (arm) {
    case Arm::upper:
      return "upper";
    case Arm::lower:
      return "lower";
    case Arm::outside:
      return "outside";
  }
  return "?";
}

AtomModel AtomModel::half_absorber(std::string register_id, Arm arm) {
  AtomModel m;
  m.variant = Variant::half_absorber;
  m.register_id = std::move(register_id);
  m.arm = arm;
  return m;
}

AtomModel AtomModel::two_level(std::string register_id, Arm arm,
                               optics::PolarizationSpec::Kind resonant) {
  if (resonant != PolarizationSpec::Kind::sigma_plus &&
      resonant != PolarizationSpec::Kind::sigma_minus) {
    throw StateError("two_level atoms are resonant with sigma+ or sigma- only");
  }
  AtomModel m;
  m.variant = Variant::two_level;
  m.register_id = std::move(register_id);
  m.arm = arm;
  m.resonant = resonant;
  return m;
}

AtomModel AtomModel::classical_opaque(Arm arm) {
  AtomModel m;
  m.variant = Variant::classical_opaque;
  m.register_id.clear();
  m.arm = arm;
  return m;
}

AtomModel AtomModel::spectator(std::string register_id) {
  AtomModel m;
  m.variant = Variant::spectator;
  m.register_id = std::move(register_id);
  m.arm = Arm::outside;
  return m;
}

std::string AtomModel::variant_label() const {
  switch (variant) {
    case Variant::classical_opaque:
      return "classical_opaque";
    case Variant::two_level:
      return "two_level";
    case Variant::half_absorber:
      return "half_absorber";
    case Variant::spectator:
      return "spectator";
  }
  return "?";
}

JointState prepare_atoms(const AtomInitialState& spec, const std::vector<AtomModel>& models,
                         std::vector<std::string>* warnings) {
  std::vector<RegisterDecl> regs;
  for (const auto& model : models) {
    if (model.has_register()) regs.push_back(atom_register(model.register_id));
  }
  if (regs.empty()) throw StateError("prepare_atoms: no atom registers declared");

  JointState::AmplitudeMap amps;
  if (spec.is_joint()) {
    if (!spec.per_atom.empty()) {
      throw StateError("prepare_atoms: joint and per-atom preparations are exclusive");
    }
    for (const auto& [tuple, amp] : spec.joint) amps[tuple] = amp;
  } else {
    if (spec.per_atom.size() != regs.size()) {
      throw StateError("prepare_atoms: need one amplitude map per atom register");
    }
    amps[{}] = complexd{1.0, 0.0};
    for (std::size_t k = 0; k < regs.size(); ++k) {
      JointState::AmplitudeMap next;
      for (const auto& [prefix, acc] : amps) {
        for (const auto& [label, amp] : spec.per_atom[k]) {
          LabelTuple t = prefix;
          t.push_back(label);
          next[std::move(t)] = acc * amp;
        }
      }
      amps = std::move(next);
    }
  }

  JointState state(regs, std::move(amps));
  const double n = state.norm();
  if (n <= 1e-12) throw StateError("prepare_atoms: initial atomic state has (near-)zero norm");
  if (std::abs(n - 1.0) > kInitialNormTol && warnings != nullptr) {
    std::ostringstream msg;
    msg.precision(12);
    msg << "initial atomic state renormalized (norm was " << n << ")";
    warnings->push_back(msg.str());
  }
  state = state.normalized();

  if (warnings != nullptr) {
    for (const auto& reg : regs) {
      double g_pop = 0.0;
      const std::size_t idx = state.register_index(reg.name);
      for (const auto& [tuple, amp] : state.amplitudes()) {
        if (tuple[idx] == "g") g_pop += std::norm(amp);
      }
      if (g_pop > 1e-12) {
        std::ostringstream msg;
        msg.precision(12);
        msg << "atom '" << reg.name << "' starts with |g> population " << g_pop
            << "; it is transparent to the probe light";
        warnings->push_back(msg.str());
      }
    }
  }
  return state;
}

JointState interact(const JointState& s, const AtomModel& model) {
  if (model.variant == AtomModel::Variant::spectator) return s;

  if (!s.has_register(optics::kPhotonRegister)) {
    throw StateError("interact: state has no photon register");
  }
  if (optics::photon_basis_is_linear(s)) {
    throw StateError("interact: photon register must be in the circular basis");
  }
  const std::string k = arm_prefix(model.arm);

  if (model.variant == AtomModel::Variant::classical_opaque) {
    return s.apply_map(optics::kPhotonRegister,
                       photon_map_from_moves(optics::circular_photon_basis(),
                                             {{k + "+", "S+"}, {k + "-", "S-"}}));
  }

  if (!s.has_register(model.register_id)) {
    throw StateError("interact: state has no register '" + model.register_id + "'");
  }

  MoveList moves;
  if (model.variant == AtomModel::Variant::half_absorber) {
    moves.push_back({{k + "+", "m+"}, {"S+", "g"}});
    moves.push_back({{k + "-", "m-"}, {"S-", "g"}});
  } else {  // two_level
    if (model.resonant == PolarizationSpec::Kind::sigma_plus) {
      moves.push_back({{k + "+", "m+"}, {"S+", "g"}});
    } else {
      moves.push_back({{k + "-", "m-"}, {"S-", "g"}});
    }
  }
  return s.apply_map({optics::kPhotonRegister, model.register_id},
                     joint_map_from_moves(optics::circular_photon_basis(), atom_basis(), moves));
}

}  // namespace ifm::matter
