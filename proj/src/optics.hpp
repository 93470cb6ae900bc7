#pragma once

#include <string>
#include <utility>
#include <vector>

#include "state.hpp"

namespace ifm::optics {

inline constexpr const char* kPhotonRegister = "photon";

// Photon basis labels. The scattered modes S+/S- are part of the photon
// register in both bases; they never mix with the interferometer ports.
const std::vector<std::string>& circular_photon_basis();  // u+, u-, l+, l-, S+, S-
const std::vector<std::string>& linear_photon_basis();    // ux, uy, lx, ly, S+, S-

RegisterDecl photon_register();         // circular basis
RegisterDecl photon_register_linear();  // linear basis

enum class Port { upper, lower };

// Input polarization. Circular components (c+, c-) follow the convention
//   a(sigma+) = -(a_x + i a_y)/sqrt2,   a(sigma-) = (a_x - i a_y)/sqrt2,
// so x = (sigma- - sigma+)/sqrt2 and y = i (sigma+ + sigma-)/sqrt2.
struct PolarizationSpec {
  enum class Kind { sigma_plus, sigma_minus, x, y, custom };

  Kind kind = Kind::sigma_plus;
  // Only meaningful for Kind::custom; normalized on use.
  complexd custom_plus{0.0, 0.0};
  complexd custom_minus{0.0, 0.0};

  static PolarizationSpec sigma_plus() { return {Kind::sigma_plus}; }
  static PolarizationSpec sigma_minus() { return {Kind::sigma_minus}; }
  static PolarizationSpec x() { return {Kind::x}; }
  static PolarizationSpec y() { return {Kind::y}; }
  static PolarizationSpec custom(complexd c_plus, complexd c_minus);

  // Normalized (c+, c-) amplitudes on the circular basis.
  std::pair<complexd, complexd> circular_components() const;
  std::string label() const;  // "sigma+", "sigma-", "x", "y", "custom"

  bool operator==(const PolarizationSpec&) const = default;
};

// Single photon entering the given port; photon register in the circular basis.
JointState photon_input(Port port, const PolarizationSpec& pol);

// 50-50 beam splitter acting on the ports, identically for every
// polarization: u' = (i u + l)/sqrt2, l' = (u + i l)/sqrt2. Scattered modes
// are untouched. Works in either photon basis.
JointState beam_splitter(const JointState& s);

// Unitary relabeling between the circular and linear photon bases.
JointState circular_to_linear(const JointState& s);
JointState linear_to_circular(const JointState& s);

bool photon_basis_is_linear(const JointState& s);

std::string port_label(Port port);

}  // namespace ifm::optics
