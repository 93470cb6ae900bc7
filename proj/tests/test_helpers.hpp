#pragma once

#include <complex>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "density.hpp"
#include "matter.hpp"
#include "optics.hpp"
#include "scenario.hpp"
#include "state.hpp"

namespace ifm::testing {

inline const double kRt2 = std::sqrt(2.0);

inline double max_amplitude_diff(const JointState& a, const JointState& b) {
  double dev = 0.0;
  for (const auto& [tuple, amp] : a.amplitudes()) {
    dev = std::max(dev, std::abs(amp - b.amplitude(tuple)));
  }
  for (const auto& [tuple, amp] : b.amplitudes()) {
    dev = std::max(dev, std::abs(amp - a.amplitude(tuple)));
  }
  return dev;
}

inline double max_entry_diff(const DensityMatrix& a, const DensityMatrix& b) {
  return (a.matrix() - b.matrix()).cwiseAbs().maxCoeff();
}

// Phase-insensitive closeness of normalized states.
inline double overlap(const JointState& a, const JointState& b) {
  return std::abs(inner_product(a.normalized(), b.normalized()));
}

class Rng {
 public:
  explicit Rng(unsigned seed) : engine_(seed) {}

  double uniform(double lo = 0.0, double hi = 1.0) {
    return std::uniform_real_distribution<double>(lo, hi)(engine_);
  }

  complexd amplitude() {
    std::normal_distribution<double> n(0.0, 1.0);
    return {n(engine_), n(engine_)};
  }

  // Normalized state over the given registers with every tuple populated.
  JointState state(const std::vector<RegisterDecl>& regs) {
    std::vector<LabelTuple> tuples{{}};
    for (const auto& reg : regs) {
      std::vector<LabelTuple> next;
      for (const auto& prefix : tuples) {
        for (const auto& label : reg.labels) {
          LabelTuple t = prefix;
          t.push_back(label);
          next.push_back(std::move(t));
        }
      }
      tuples = std::move(next);
    }
    JointState::AmplitudeMap amps;
    for (const auto& t : tuples) amps[t] = amplitude();
    return JointState(regs, std::move(amps)).normalized();
  }

  // Normalized state with no scattered-photon components (the domain on
  // which absorption acts isometrically).
  JointState unscattered_state(const std::vector<RegisterDecl>& regs) {
    JointState s = state(regs);
    JointState::AmplitudeMap amps;
    const std::size_t photon = s.register_index(optics::kPhotonRegister);
    for (const auto& [tuple, amp] : s.amplitudes()) {
      if (tuple[photon][0] != 'S') amps[tuple] = amp;
    }
    return JointState(regs, std::move(amps)).normalized();
  }

  // Haar-ish random unitary via QR of a Gaussian matrix.
  Eigen::MatrixXcd unitary(Eigen::Index n) {
    Eigen::MatrixXcd g(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < n; ++j) g(i, j) = amplitude();
    }
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
    Eigen::MatrixXcd q = qr.householderQ();
    return q;
  }

  std::mt19937& engine() { return engine_; }

 private:
  std::mt19937 engine_;
};

// Randomized scenario covering the configuration space: every polarization
// kind (including arbitrary circular superpositions), every absorber variant,
// both arms, spectators, joint preparations, and every analysis basis.
inline scenario::Scenario random_scenario(Rng& rng, int index) {
  using matter::Arm;
  using matter::AtomModel;
  using optics::PolarizationSpec;
  scenario::Scenario sc;
  sc.name = "random_" + std::to_string(index);
  sc.port = index % 3 == 0 ? optics::Port::upper : optics::Port::lower;

  switch (index % 5) {
    case 0:
      sc.polarization = PolarizationSpec::sigma_plus();
      break;
    case 1:
      sc.polarization = PolarizationSpec::sigma_minus();
      break;
    case 2:
      sc.polarization = PolarizationSpec::x();
      break;
    case 3:
      sc.polarization = PolarizationSpec::y();
      break;
    default:
      sc.polarization = PolarizationSpec::custom(rng.amplitude(), rng.amplitude());
      break;
  }

  auto random_initial = [&rng](bool with_ground) {
    std::map<std::string, complexd> amps{{"m+", rng.amplitude()}, {"m-", rng.amplitude()}};
    if (with_ground) amps["g"] = 0.25 * rng.amplitude();
    double sq = 0.0;
    for (const auto& [label, amp] : amps) sq += std::norm(amp);
    const double n = std::sqrt(sq);
    for (auto& [label, amp] : amps) amp /= n;
    return amps;
  };
  const Arm arm = index % 2 == 0 ? Arm::lower : Arm::upper;

  switch (index % 6) {
    case 0:
      sc.atoms.push_back({AtomModel::half_absorber("atom", arm), random_initial(false)});
      break;
    case 1:
      sc.atoms.push_back(
          {AtomModel::two_level("atom", arm,
                                index % 4 < 2 ? PolarizationSpec::Kind::sigma_plus
                                              : PolarizationSpec::Kind::sigma_minus),
           random_initial(false)});
      break;
    case 2:
      sc.atoms.push_back({AtomModel::classical_opaque(arm), {}});
      break;
    case 3:
      // no atoms at all
      break;
    case 4: {
      // entangled pair, one spectator
      sc.atoms.push_back({AtomModel::half_absorber("atom1", arm), {}});
      sc.atoms.push_back({AtomModel::spectator("atom2"), {}});
      std::map<LabelTuple, complexd> joint;
      for (const auto& l1 : {"m+", "m-"}) {
        for (const auto& l2 : {"m+", "m-"}) joint[{l1, l2}] = rng.amplitude();
      }
      double sq = 0.0;
      for (const auto& [tuple, amp] : joint) sq += std::norm(amp);
      for (auto& [tuple, amp] : joint) amp /= std::sqrt(sq);
      sc.joint_initial = std::move(joint);
      break;
    }
    default:
      // absorbers in both arms
      sc.atoms.push_back(
          {AtomModel::half_absorber("atom1", Arm::lower), random_initial(index % 7 == 5)});
      sc.atoms.push_back(
          {AtomModel::two_level("atom2", Arm::upper, PolarizationSpec::Kind::sigma_plus),
           random_initial(false)});
      break;
  }

  switch (index % 3) {
    case 0:
      sc.detector.analysis = measurement::AnalysisBasis::none;
      break;
    case 1:
      sc.detector.analysis = measurement::AnalysisBasis::circular;
      break;
    default:
      sc.detector.analysis = measurement::AnalysisBasis::linear;
      break;
  }
  return sc;
}

// Wraps a dense unitary as a LinearMap over the given labels.
inline LinearMap map_from_matrix(const std::vector<std::string>& labels,
                                 const Eigen::MatrixXcd& m) {
  std::vector<std::vector<complexd>> coeff(labels.size(),
                                           std::vector<complexd>(labels.size()));
  for (std::size_t r = 0; r < labels.size(); ++r) {
    for (std::size_t c = 0; c < labels.size(); ++c) {
      coeff[r][c] = m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
    }
  }
  return LinearMap::on_labels(labels, labels, std::move(coeff));
}

}  // namespace ifm::testing
