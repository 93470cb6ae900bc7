#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "optics.hpp"
#include "state.hpp"

namespace ifm::matter {

// Atom basis: two metastable levels carrying the qubit, plus the stable
// ground state reached after absorbing a resonant photon.
const std::vector<std::string>& atom_basis();  // m+, m-, g

RegisterDecl atom_register(const std::string& name);

enum class Arm { upper, lower, outside };

std::string arm_label(Arm arm);

// Absorption behaviour of one object in (or outside) the interferometer.
//
//   half_absorber    absorbs sigma+ from |m+> and sigma- from |m->, scattering
//                    into S+/S- and dropping to |g>; transparent otherwise.
//   two_level        absorbs only its resonant polarization, from the matching
//                    metastable state.
//   classical_opaque absorbs any polarization deterministically; carries no
//                    atom register.
//   spectator        sits outside the light path; never touched.
struct AtomModel {
  enum class Variant { classical_opaque, two_level, half_absorber, spectator };

  Variant variant = Variant::half_absorber;
  // two_level only: which polarization drives the absorbing transition.
  optics::PolarizationSpec::Kind resonant = optics::PolarizationSpec::Kind::sigma_plus;
  std::string register_id;  // empty for classical_opaque
  Arm arm = Arm::lower;

  static AtomModel half_absorber(std::string register_id, Arm arm);
  static AtomModel two_level(std::string register_id, Arm arm,
                             optics::PolarizationSpec::Kind resonant);
  static AtomModel classical_opaque(Arm arm);
  static AtomModel spectator(std::string register_id);

  bool has_register() const { return variant != Variant::classical_opaque; }
  bool is_absorbing() const { return variant != Variant::spectator; }
  std::string variant_label() const;
};

// Initial internal state of the registered atoms: either one amplitude map
// per atom (product preparation) or a single joint map over all of them
// (entangled preparation). Exactly one of the two forms is used.
struct AtomInitialState {
  std::vector<std::map<std::string, complexd>> per_atom;
  std::map<LabelTuple, complexd> joint;

  bool is_joint() const { return !joint.empty(); }
};

// Builds the atomic factor to be tensored with the photon input. States more
// than kInitialNormTol away from unit norm are renormalized and reported
// through `warnings`; initial |g> population is also flagged there.
JointState prepare_atoms(const AtomInitialState& spec, const std::vector<AtomModel>& models,
                         std::vector<std::string>* warnings = nullptr);

// One pass of the photon across the object in its arm. Basis tuples are
// rewritten according to the model's absorption rule; every other register is
// untouched. Requires the photon register in the circular basis.
JointState interact(const JointState& s, const AtomModel& model);

}  // namespace ifm::matter
