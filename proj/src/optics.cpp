#include "optics.hpp"

#include <cmath>
#include <numbers>

namespace ifm::optics {

namespace {

constexpr double kInvSqrt2 = std::numbers::sqrt2 / 2.0;
constexpr complexd kI{0.0, 1.0};

LinearMap beam_splitter_map(const std::vector<std::string>& basis) {
  // basis = {u?, u?, l?, l?, S+, S-}; ports mix pairwise per polarization.
  std::vector<std::vector<complexd>> coeff(6, std::vector<complexd>(6, complexd{0.0, 0.0}));
  for (std::size_t p = 0; p < 2; ++p) {  // polarization column within the port pair
    const std::size_t u = p, l = 2 + p;
    coeff[u][u] = kI * kInvSqrt2;
    coeff[u][l] = kInvSqrt2;
    coeff[l][u] = kInvSqrt2;
    coeff[l][l] = kI * kInvSqrt2;
  }
  coeff[4][4] = 1.0;
  coeff[5][5] = 1.0;
  return LinearMap::on_labels(basis, basis, std::move(coeff));
}

}  // namespace

const std::vector<std::string>& circular_photon_basis() {
  static const std::vector<std::string> basis{"u+", "u-", "l+", "l-", "S+", "S-"};
  return basis;
}

const std::vector<std::string>& linear_photon_basis() {
  static const std::vector<std::string> basis{"ux", "uy", "lx", "ly", "S+", "S-"};
  return basis;
}

RegisterDecl photon_register() { return {kPhotonRegister, circular_photon_basis()}; }

RegisterDecl photon_register_linear() { return {kPhotonRegister, linear_photon_basis()}; }

PolarizationSpec PolarizationSpec::custom(complexd c_plus, complexd c_minus) {
  PolarizationSpec spec;
  spec.kind = Kind::custom;
  spec.custom_plus = c_plus;
  spec.custom_minus = c_minus;
  return spec;
}

std::pair<complexd, complexd> PolarizationSpec::circular_components() const {
  switch (kind) {
    case Kind::sigma_plus:
      return {complexd{1.0, 0.0}, complexd{0.0, 0.0}};
    case Kind::sigma_minus:
      return {complexd{0.0, 0.0}, complexd{1.0, 0.0}};
    case Kind::x:
      return {complexd{-kInvSqrt2, 0.0}, complexd{kInvSqrt2, 0.0}};
    case Kind::y:
      return {complexd{0.0, kInvSqrt2}, complexd{0.0, kInvSqrt2}};
    case Kind::custom: {
      const double n = std::sqrt(std::norm(custom_plus) + std::norm(custom_minus));
      if (n <= 1e-12) throw StateError("custom polarization has (near-)zero norm");
      return {custom_plus / n, custom_minus / n};
    }
  }
  throw StateError("unreachable polarization kind");
}

std::string PolarizationSpec::label() const {
  switch (kind) {
    case Kind::sigma_plus:
      return "sigma+";
    case Kind::sigma_minus:
      return "sigma-";
    case Kind::x:
      return "x";
    case Kind::y:
      return "y";
    case Kind::custom:
      return "custom";
  }
  return "?";
}

std::string port_label(Port port) { return port == Port::upper ? "upper" : "lower"; }

JointState photon_input(Port port, const PolarizationSpec& pol) {
  const auto [c_plus, c_minus] = pol.circular_components();
  const std::string prefix = port == Port::upper ? "u" : "l";
  std::map<std::string, complexd> amps;
  amps[prefix + "+"] = c_plus;
  amps[prefix + "-"] = c_minus;
  return JointState::from_amplitudes(photon_register(), amps);
}

bool photon_basis_is_linear(const JointState& s) {
  const auto& labels = s.register_decl(kPhotonRegister).labels;
  if (labels == linear_photon_basis()) return true;
  if (labels == circular_photon_basis()) return false;
  throw StateError("photon register has an unrecognized basis");
}

JointState beam_splitter(const JointState& s) {
  const bool linear = photon_basis_is_linear(s);
  const auto& basis = linear ? linear_photon_basis() : circular_photon_basis();
  return s.apply_map(kPhotonRegister, beam_splitter_map(basis));
}

JointState circular_to_linear(const JointState& s) {
  if (photon_basis_is_linear(s)) {
    throw StateError("photon register is already in the linear basis");
  }
  // Amplitude maps per port: c_x = (c_- - c_+)/sqrt2, c_y = -i (c_+ + c_-)/sqrt2.
  std::vector<std::vector<complexd>> coeff(6, std::vector<complexd>(6, complexd{0.0, 0.0}));
  for (std::size_t port = 0; port < 2; ++port) {
    const std::size_t plus = 2 * port, minus = 2 * port + 1;
    const std::size_t x = 2 * port, y = 2 * port + 1;
    coeff[x][plus] = -kInvSqrt2;
    coeff[x][minus] = kInvSqrt2;
    coeff[y][plus] = -kI * kInvSqrt2;
    coeff[y][minus] = -kI * kInvSqrt2;
  }
  coeff[4][4] = 1.0;
  coeff[5][5] = 1.0;
  LinearMap m = LinearMap::on_labels(circular_photon_basis(), linear_photon_basis(),
                                     std::move(coeff));
  m.out_basis = {photon_register_linear()};
  return s.apply_map(kPhotonRegister, m);
}

JointState linear_to_circular(const JointState& s) {
  if (!photon_basis_is_linear(s)) {
    throw StateError("photon register is already in the circular basis");
  }
  // Inverse amplitude maps: c_+ = (-c_x + i c_y)/sqrt2, c_- = (c_x + i c_y)/sqrt2.
  std::vector<std::vector<complexd>> coeff(6, std::vector<complexd>(6, complexd{0.0, 0.0}));
  for (std::size_t port = 0; port < 2; ++port) {
    const std::size_t x = 2 * port, y = 2 * port + 1;
    const std::size_t plus = 2 * port, minus = 2 * port + 1;
    coeff[plus][x] = -kInvSqrt2;
    coeff[plus][y] = kI * kInvSqrt2;
    coeff[minus][x] = kInvSqrt2;
    coeff[minus][y] = kI * kInvSqrt2;
  }
  coeff[4][4] = 1.0;
  coeff[5][5] = 1.0;
  LinearMap m = LinearMap::on_labels(linear_photon_basis(), circular_photon_basis(),
                                     std::move(coeff));
  m.out_basis = {photon_register()};
  return s.apply_map(kPhotonRegister, m);
}

}  // namespace ifm::optics
