#include "oracle.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "pipeline.hpp"

namespace ifm::oracle {

namespace {

using scenario::Scenario;

// Photon digits.
constexpr int kUPlus = 0, kUMinus = 1, kLPlus = 2, kLMinus = 3, kSPlus = 4, kSMinus = 5;
// Atom digits.
constexpr int kMPlus = 0, kMMinus = 1, kG = 2;

constexpr double kRSqrt2 = std::numbers::sqrt2 / 2.0;
constexpr complexd kJ{0.0, 1.0};

std::size_t pow3(std::size_t n) {
  std::size_t p = 1;
  while (n--) p *= 3;
  return p;
}

struct Indexer {
  std::size_t atoms;

  Eigen::Index dim() const { return static_cast<Eigen::Index>(6 * pow3(atoms)); }

  Eigen::Index index(int photon, const std::vector<int>& atom_digits) const {
    std::size_t idx = static_cast<std::size_t>(photon);
    for (std::size_t k = 0; k < atoms; ++k) {
      idx = idx * 3 + static_cast<std::size_t>(atom_digits[k]);
    }
    return static_cast<Eigen::Index>(idx);
  }

  void decompose(Eigen::Index full, int& photon, std::vector<int>& atom_digits) const {
    auto rest = static_cast<std::size_t>(full);
    atom_digits.assign(atoms, 0);
    for (std::size_t k = atoms; k-- > 0;) {
      atom_digits[k] = static_cast<int>(rest % 3);
      rest /= 3;
    }
    photon = static_cast<int>(rest);
  }
};

Eigen::MatrixXcd expand_photon_matrix(const Eigen::Matrix<complexd, 6, 6>& m6,
                                      const Indexer& ix) {
  const auto block = static_cast<Eigen::Index>(pow3(ix.atoms));
  Eigen::MatrixXcd full = Eigen::MatrixXcd::Zero(ix.dim(), ix.dim());
  for (int r = 0; r < 6; ++r) {
    for (int c = 0; c < 6; ++c) {
      if (m6(r, c) == complexd{0.0, 0.0}) continue;
      for (Eigen::Index a = 0; a < block; ++a) {
        full(r * block + a, c * block + a) = m6(r, c);
      }
    }
  }
  return full;
}

Eigen::Matrix<complexd, 6, 6> dense_beam_splitter() {
  Eigen::Matrix<complexd, 6, 6> b = Eigen::Matrix<complexd, 6, 6>::Zero();
  b(kUPlus, kUPlus) = kJ * kRSqrt2;
  b(kUPlus, kLPlus) = kRSqrt2;
  b(kLPlus, kUPlus) = kRSqrt2;
  b(kLPlus, kLPlus) = kJ * kRSqrt2;
  b(kUMinus, kUMinus) = kJ * kRSqrt2;
  b(kUMinus, kLMinus) = kRSqrt2;
  b(kLMinus, kUMinus) = kRSqrt2;
  b(kLMinus, kLMinus) = kJ * kRSqrt2;
  b(kSPlus, kSPlus) = 1.0;
  b(kSMinus, kSMinus) = 1.0;
  return b;
}

Eigen::Matrix<complexd, 6, 6> dense_linear_analysis() {
  Eigen::Matrix<complexd, 6, 6> m = Eigen::Matrix<complexd, 6, 6>::Zero();
  for (int port = 0; port < 2; ++port) {
    const int plus = 2 * port, minus = 2 * port + 1;
    const int x = 2 * port, y = 2 * port + 1;
    m(x, plus) = -kRSqrt2;
    m(x, minus) = kRSqrt2;
    m(y, plus) = -kJ * kRSqrt2;
    m(y, minus) = -kJ * kRSqrt2;
  }
  m(kSPlus, kSPlus) = 1.0;
  m(kSMinus, kSMinus) = 1.0;
  return m;
}

int atom_digit(const std::string& label) {
  if (label == "m+") return kMPlus;
  if (label == "m-") return kMMinus;
  if (label == "g") return kG;
  throw StateError("oracle: unknown atomic label '" + label + "'");
}

// One interaction pass as a dense matrix. `reg_index` is the position of the
// model's register among the registered atoms; -1 for classical absorbers.
Eigen::MatrixXcd dense_interaction(const matter::AtomModel& model, int reg_index,
                                   const Indexer& ix) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(ix.dim(), ix.dim());
  if (model.variant == matter::AtomModel::Variant::spectator) return m;

  const bool upper = model.arm == matter::Arm::upper;
  const int arm_plus = upper ? kUPlus : kLPlus;
  const int arm_minus = upper ? kUMinus : kLMinus;

  std::vector<int> digits;
  for (Eigen::Index src = 0; src < ix.dim(); ++src) {
    int photon = 0;
    ix.decompose(src, photon, digits);

    int new_photon = photon;
    std::vector<int> new_digits = digits;
    switch (model.variant) {
      case matter::AtomModel::Variant::classical_opaque:
        if (photon == arm_plus) new_photon = kSPlus;
        if (photon == arm_minus) new_photon = kSMinus;
        break;
      case matter::AtomModel::Variant::half_absorber:
        if (photon == arm_plus && digits[reg_index] == kMPlus) {
          new_photon = kSPlus;
          new_digits[reg_index] = kG;
        }
        if (photon == arm_minus && digits[reg_index] == kMMinus) {
          new_photon = kSMinus;
          new_digits[reg_index] = kG;
        }
        break;
      case matter::AtomModel::Variant::two_level:
        if (model.resonant == optics::PolarizationSpec::Kind::sigma_plus) {
          if (photon == arm_plus && digits[reg_index] == kMPlus) {
            new_photon = kSPlus;
            new_digits[reg_index] = kG;
          }
        } else {
          if (photon == arm_minus && digits[reg_index] == kMMinus) {
            new_photon = kSMinus;
            new_digits[reg_index] = kG;
          }
        }
        break;
      case matter::AtomModel::Variant::spectator:
        break;
    }
    const Eigen::Index dst = ix.index(new_photon, new_digits);
    if (dst != src) {
      m(src, src) = 0.0;
      m(dst, src) = 1.0;
    }
  }
  return m;
}

std::pair<complexd, complexd> dense_polarization(const optics::PolarizationSpec& pol) {
  using Kind = optics::PolarizationSpec::Kind;
  switch (pol.kind) {
    case Kind::sigma_plus:
      return {1.0, 0.0};
    case Kind::sigma_minus:
      return {0.0, 1.0};
    case Kind::x:
      return {-kRSqrt2, kRSqrt2};
    case Kind::y:
      return {kJ * kRSqrt2, kJ * kRSqrt2};
    case Kind::custom: {
      const double n = std::sqrt(std::norm(pol.custom_plus) + std::norm(pol.custom_minus));
      if (n <= 1e-12) throw StateError("oracle: custom polarization has (near-)zero norm");
      return {pol.custom_plus / n, pol.custom_minus / n};
    }
  }
  throw StateError("oracle: unreachable polarization kind");
}

Eigen::VectorXcd dense_input(const Scenario& sc, const Indexer& ix) {
  const auto [c_plus, c_minus] = dense_polarization(sc.polarization);
  const bool upper = sc.port == optics::Port::upper;
  const int plus = upper ? kUPlus : kLPlus;
  const int minus = upper ? kUMinus : kLMinus;

  // Atomic amplitudes over base-3 digit tuples.
  std::vector<std::pair<std::vector<int>, complexd>> atom_amps;
  if (ix.atoms == 0) {
    atom_amps.push_back({{}, complexd{1.0, 0.0}});
  } else if (!sc.joint_initial.empty()) {
    for (const auto& [tuple, amp] : sc.joint_initial) {
      std::vector<int> digits;
      for (const auto& label : tuple) digits.push_back(atom_digit(label));
      atom_amps.push_back({std::move(digits), amp});
    }
  } else {
    atom_amps.push_back({{}, complexd{1.0, 0.0}});
    for (const auto& atom : sc.atoms) {
      if (!atom.model.has_register()) continue;
      std::vector<std::pair<std::vector<int>, complexd>> next;
      for (const auto& [digits, acc] : atom_amps) {
        for (const auto& [label, amp] : atom.initial) {
          std::vector<int> d = digits;
          d.push_back(atom_digit(label));
          next.push_back({std::move(d), acc * amp});
        }
      }
      atom_amps = std::move(next);
    }
  }

  double atom_sq = 0.0;
  for (const auto& [digits, amp] : atom_amps) {
    (void)digits;
    atom_sq += std::norm(amp);
  }
  const double atom_norm = std::sqrt(atom_sq);
  if (atom_norm <= 1e-12) throw StateError("oracle: atomic preparation has (near-)zero norm");

  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(ix.dim());
  for (const auto& [digits, amp] : atom_amps) {
    v(ix.index(plus, digits)) += c_plus * amp / atom_norm;
    v(ix.index(minus, digits)) += c_minus * amp / atom_norm;
  }
  return v;
}

std::vector<RegisterDecl> dense_atom_registers(const Scenario& sc) {
  std::vector<RegisterDecl> regs;
  for (const auto& atom : sc.atoms) {
    if (atom.model.has_register()) {
      regs.push_back({atom.model.register_id, {"m+", "m-", "g"}});
    }
  }
  return regs;
}

measurement::Outcome dense_outcome(const Eigen::VectorXcd& v, const Indexer& ix,
                                   measurement::OutcomeTag tag,
                                   std::optional<std::string> pol,
                                   const std::vector<int>& photon_digits,
                                   const std::vector<RegisterDecl>& atom_regs) {
  const auto block = static_cast<Eigen::Index>(pow3(ix.atoms));
  double p = 0.0;
  for (int d : photon_digits) {
    for (Eigen::Index a = 0; a < block; ++a) p += std::norm(v(d * block + a));
  }

  measurement::Outcome o;
  o.tag = tag;
  o.polarization = std::move(pol);
  o.probability = p;
  if (p >= kOutcomeProbFloor && !atom_regs.empty()) {
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(block, block);
    for (int d : photon_digits) {
      for (Eigen::Index a = 0; a < block; ++a) {
        for (Eigen::Index b = 0; b < block; ++b) {
          rho(a, b) += v(d * block + a) * std::conj(v(d * block + b));
        }
      }
    }
    o.posterior = DensityMatrix(atom_regs, rho / p);
  }
  return o;
}

}  // namespace

DenseEvolution::DenseEvolution(const Scenario& sc) {
  scenario::validate(sc);
  std::size_t registered = 0;
  for (const auto& atom : sc.atoms) {
    if (atom.model.has_register()) ++registered;
  }
  atom_count = registered;
  const Indexer ix{atom_count};
  dim = ix.dim();

  beam_splitter = expand_photon_matrix(dense_beam_splitter(), ix);

  interaction = Eigen::MatrixXcd::Identity(dim, dim);
  int reg_index = 0;
  for (const auto& atom : sc.atoms) {
    const int this_reg = atom.model.has_register() ? reg_index++ : -1;
    interaction = dense_interaction(atom.model, this_reg, ix) * interaction;
  }

  composed = beam_splitter * interaction * beam_splitter;
  input = dense_input(sc, ix);
}

Eigen::MatrixXcd DenseEvolution::composed_on_unscattered() const {
  const auto block = static_cast<Eigen::Index>(pow3(atom_count));
  Eigen::MatrixXcd cols(dim, 4 * block);
  Eigen::Index c = 0;
  for (int photon = kUPlus; photon <= kLMinus; ++photon) {
    for (Eigen::Index a = 0; a < block; ++a) {
      cols.col(c++) = composed.col(photon * block + a);
    }
  }
  return cols;
}

std::vector<measurement::Outcome> oracle_run(const Scenario& sc) {
  const DenseEvolution evo(sc);
  const Indexer ix{evo.atom_count};
  Eigen::VectorXcd out = evo.output();

  // After the analysis rotation the photon digits 0..3 mean ux, uy, lx, ly.
  const bool linear = sc.detector.analysis == measurement::AnalysisBasis::linear;
  if (linear) out = expand_photon_matrix(dense_linear_analysis(), ix) * out;

  const auto atom_regs = dense_atom_registers(sc);
  std::vector<measurement::Outcome> outcomes;
  using measurement::OutcomeTag;
  outcomes.push_back(
      dense_outcome(out, ix, OutcomeTag::absorbed, std::nullopt, {kSPlus, kSMinus}, atom_regs));
  switch (sc.detector.analysis) {
    case measurement::AnalysisBasis::none:
      outcomes.push_back(
          dense_outcome(out, ix, OutcomeTag::Du, std::nullopt, {kUPlus, kUMinus}, atom_regs));
      outcomes.push_back(
          dense_outcome(out, ix, OutcomeTag::Dl, std::nullopt, {kLPlus, kLMinus}, atom_regs));
      break;
    case measurement::AnalysisBasis::circular:
      outcomes.push_back(dense_outcome(out, ix, OutcomeTag::Du, "sigma+", {kUPlus}, atom_regs));
      outcomes.push_back(dense_outcome(out, ix, OutcomeTag::Du, "sigma-", {kUMinus}, atom_regs));
      outcomes.push_back(dense_outcome(out, ix, OutcomeTag::Dl, "sigma+", {kLPlus}, atom_regs));
      outcomes.push_back(dense_outcome(out, ix, OutcomeTag::Dl, "sigma-", {kLMinus}, atom_regs));
      break;
    case measurement::AnalysisBasis::linear:
      outcomes.push_back(dense_outcome(out, ix, OutcomeTag::Du, "x", {kUPlus}, atom_regs));
      outcomes.push_back(dense_outcome(out, ix, OutcomeTag::Du, "y", {kUMinus}, atom_regs));
      outcomes.push_back(dense_outcome(out, ix, OutcomeTag::Dl, "x", {kLPlus}, atom_regs));
      outcomes.push_back(dense_outcome(out, ix, OutcomeTag::Dl, "y", {kLMinus}, atom_regs));
      break;
  }
  return outcomes;
}

Comparison compare_with_pipeline(const Scenario& sc) {
  Comparison cmp;
  auto track = [&cmp](double deviation, const std::string& what) {
    if (deviation > cmp.max_deviation) {
      cmp.max_deviation = deviation;
      cmp.worst = what;
    }
  };
  const double structural = std::numeric_limits<double>::infinity();

  const JointState evolved = scenario::evolve(sc);
  const auto budget = measurement::outcome_budget(evolved);
  const auto pipeline = measurement::measure(evolved, sc.detector);
  const auto reference = oracle_run(sc);

  if (pipeline.size() != reference.size()) {
    track(structural, "outcome count");
    return cmp;
  }

  double ref_absorbed = 0.0, ref_du = 0.0, ref_dl = 0.0;
  for (const auto& o : reference) {
    switch (o.tag) {
      case measurement::OutcomeTag::absorbed:
        ref_absorbed += o.probability;
        break;
      case measurement::OutcomeTag::Du:
        ref_du += o.probability;
        break;
      case measurement::OutcomeTag::Dl:
        ref_dl += o.probability;
        break;
    }
  }
  track(std::abs(budget.absorbed - ref_absorbed), "budget.absorbed");
  track(std::abs(budget.du - ref_du), "budget.Du");
  track(std::abs(budget.dl - ref_dl), "budget.Dl");

  for (std::size_t i = 0; i < pipeline.size(); ++i) {
    const auto& a = pipeline[i];
    const auto& b = reference[i];
    const std::string where =
        "outcome[" + measurement::tag_label(a.tag) +
        (a.polarization ? "," + *a.polarization : std::string{}) + "]";
    if (a.tag != b.tag || a.polarization != b.polarization) {
      track(structural, where + " identity");
      continue;
    }
    track(std::abs(a.probability - b.probability), where + ".probability");
    if (a.posterior.has_value() != b.posterior.has_value()) {
      track(structural, where + ".posterior presence");
      continue;
    }
    if (a.posterior) {
      if (a.posterior->dim() != b.posterior->dim()) {
        track(structural, where + ".posterior dimension");
        continue;
      }
      const double dev =
          (a.posterior->matrix() - b.posterior->matrix()).cwiseAbs().maxCoeff();
      track(dev, where + ".posterior");
    }
  }
  return cmp;
}

}  // namespace ifm::oracle
