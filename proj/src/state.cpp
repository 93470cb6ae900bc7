#include "state.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace ifm {

namespace {

std::string join(const LabelTuple& tuple) {
  std::string s;
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    if (i) s += ",";
    s += tuple[i];
  }
  return s;
}

}  // namespace

bool RegisterDecl::has_label(const std::string& label) const {
  return std::find(labels.begin(), labels.end(), label) != labels.end();
}

std::size_t RegisterDecl::label_index(const std::string& label) const {
  auto it = std::find(labels.begin(), labels.end(), label);
  if (it == labels.end()) {
    throw StateError("unknown label '" + label + "' for register '" + name + "'");
  }
  return static_cast<std::size_t>(it - labels.begin());
}

LinearMap LinearMap::identity(const std::vector<std::string>& labels) {
  std::vector<std::vector<complexd>> coeffs(
      labels.size(), std::vector<complexd>(labels.size(), complexd{0.0, 0.0}));
  for (std::size_t i = 0; i < labels.size(); ++i) coeffs[i][i] = 1.0;
  return on_labels(labels, labels, std::move(coeffs));
}

LinearMap LinearMap::on_labels(const std::vector<std::string>& in,
                               const std::vector<std::string>& out,
                               std::vector<std::vector<complexd>> coefficients) {
  LinearMap m;
  for (const auto& l : in) m.in_labels.push_back({l});
  for (const auto& l : out) m.out_labels.push_back({l});
  m.coeff = std::move(coefficients);
  return m;
}

bool LinearMap::is_isometry(double tol) const {
  // M† M = I on the domain.
  for (std::size_t a = 0; a < cols(); ++a) {
    for (std::size_t b = 0; b < cols(); ++b) {
      complexd dot{0.0, 0.0};
      for (std::size_t r = 0; r < rows(); ++r) {
        dot += std::conj(coeff[r][a]) * coeff[r][b];
      }
      const complexd expected = (a == b) ? complexd{1.0, 0.0} : complexd{0.0, 0.0};
      if (std::abs(dot - expected) > tol) return false;
    }
  }
  return true;
}

JointState::JointState(std::vector<RegisterDecl> registers, AmplitudeMap amplitudes,
                       double prune_threshold)
    : registers_(std::move(registers)),
      amps_(std::move(amplitudes)),
      prune_threshold_(prune_threshold) {
  validate();
  prune();
}

JointState JointState::basis_state(RegisterDecl reg, const std::string& label) {
  AmplitudeMap amps;
  amps[{label}] = complexd{1.0, 0.0};
  return JointState({std::move(reg)}, std::move(amps));
}

JointState JointState::from_amplitudes(RegisterDecl reg,
                                       const std::map<std::string, complexd>& amps,
                                       double prune_threshold) {
  AmplitudeMap m;
  for (const auto& [label, amp] : amps) m[{label}] = amp;
  return JointState({std::move(reg)}, std::move(m), prune_threshold);
}

complexd JointState::amplitude(const LabelTuple& tuple) const {
  auto it = amps_.find(tuple);
  return it == amps_.end() ? complexd{0.0, 0.0} : it->second;
}

bool JointState::has_register(const std::string& name) const {
  for (const auto& r : registers_) {
    if (r.name == name) return true;
  }
  return false;
}

std::size_t JointState::register_index(const std::string& name) const {
  for (std::size_t i = 0; i < registers_.size(); ++i) {
    if (registers_[i].name == name) return i;
  }
  throw StateError("no register named '" + name + "'");
}

const RegisterDecl& JointState::register_decl(const std::string& name) const {
  return registers_[register_index(name)];
}

double JointState::norm() const {
  double sq = 0.0;
  for (const auto& [tuple, amp] : amps_) sq += std::norm(amp);
  return std::sqrt(sq);
}

bool JointState::is_normalized(double tol) const {
  return std::abs(norm() - 1.0) <= tol;
}

JointState JointState::normalized() const {
  const double n = norm();
  if (n <= 1e-12) throw StateError("cannot normalize a (near-)zero state");
  AmplitudeMap scaled;
  for (const auto& [tuple, amp] : amps_) scaled[tuple] = amp / n;
  return JointState(registers_, std::move(scaled), prune_threshold_);
}

JointState JointState::apply_map(const std::string& reg_name, const LinearMap& map) const {
  return apply_map(std::vector<std::string>{reg_name}, map);
}

JointState JointState::apply_map(const std::vector<std::string>& reg_names,
                                 const LinearMap& map) const {
  if (reg_names.empty()) throw StateError("apply_map: no target registers");
  std::vector<std::size_t> pos;
  pos.reserve(reg_names.size());
  for (const auto& n : reg_names) pos.push_back(register_index(n));

  if (map.coeff.size() != map.rows()) {
    throw StateError("apply_map: coefficient rows do not match output labels");
  }
  for (const auto& row : map.coeff) {
    if (row.size() != map.cols()) {
      throw StateError("apply_map: coefficient columns do not match input labels");
    }
  }

  // Registers after the map; a basis-changing map replaces the declarations.
  std::vector<RegisterDecl> new_regs = registers_;
  if (!map.out_basis.empty()) {
    if (map.out_basis.size() != reg_names.size()) {
      throw StateError("apply_map: out_basis must name every target register");
    }
    for (std::size_t k = 0; k < reg_names.size(); ++k) {
      if (map.out_basis[k].name != reg_names[k]) {
        throw StateError("apply_map: out_basis register '" + map.out_basis[k].name +
                         "' does not match target '" + reg_names[k] + "'");
      }
      new_regs[pos[k]] = map.out_basis[k];
    }
  }

  std::map<LabelTuple, std::size_t> col_of;
  for (std::size_t c = 0; c < map.cols(); ++c) {
    const auto& t = map.in_labels[c];
    if (t.size() != reg_names.size()) {
      throw StateError("apply_map: input tuple arity does not match target registers");
    }
    for (std::size_t k = 0; k < t.size(); ++k) {
      if (!registers_[pos[k]].has_label(t[k])) {
        throw StateError("apply_map: input label '" + t[k] +
                         "' is not in the basis of register '" + reg_names[k] + "'");
      }
    }
    if (!col_of.emplace(t, c).second) {
      throw StateError("apply_map: duplicate input tuple (" + join(t) + ")");
    }
  }
  for (const auto& t : map.out_labels) {
    if (t.size() != reg_names.size()) {
      throw StateError("apply_map: output tuple arity does not match target registers");
    }
    for (std::size_t k = 0; k < t.size(); ++k) {
      if (!new_regs[pos[k]].has_label(t[k])) {
        throw StateError("apply_map: output label '" + t[k] +
                         "' is not in the basis of register '" + reg_names[k] + "'");
      }
    }
  }

  AmplitudeMap out;
  LabelTuple sub(reg_names.size());
  for (const auto& [tuple, amp] : amps_) {
    for (std::size_t k = 0; k < pos.size(); ++k) sub[k] = tuple[pos[k]];
    auto it = col_of.find(sub);
    if (it == col_of.end()) {
      throw StateError("apply_map: state tuple (" + join(sub) +
                       ") is not covered by the map's input labels");
    }
    const std::size_t c = it->second;
    for (std::size_t r = 0; r < map.rows(); ++r) {
      const complexd coeff = map.coeff[r][c];
      if (coeff == complexd{0.0, 0.0}) continue;
      LabelTuple nt = tuple;
      for (std::size_t k = 0; k < pos.size(); ++k) nt[pos[k]] = map.out_labels[r][k];
      out[nt] += coeff * amp;
    }
  }
  return JointState(std::move(new_regs), std::move(out), prune_threshold_);
}

JointState JointState::with_prune_threshold(double threshold) const {
  return JointState(registers_, amps_, threshold);
}

void JointState::validate() const {
  std::set<std::string> names;
  for (const auto& r : registers_) {
    if (r.name.empty()) throw StateError("register name must be non-empty");
    if (r.labels.empty()) throw StateError("register '" + r.name + "' has an empty basis");
    if (!names.insert(r.name).second) {
      throw StateError("duplicate register name '" + r.name + "'");
    }
    std::set<std::string> seen;
    for (const auto& l : r.labels) {
      if (!seen.insert(l).second) {
        throw StateError("register '" + r.name + "' declares label '" + l + "' twice");
      }
    }
  }
  for (const auto& [tuple, amp] : amps_) {
    if (tuple.size() != registers_.size()) {
      throw StateError("amplitude tuple (" + join(tuple) + ") has " +
                       std::to_string(tuple.size()) + " labels for " +
                       std::to_string(registers_.size()) + " registers");
    }
    for (std::size_t k = 0; k < tuple.size(); ++k) {
      if (!registers_[k].has_label(tuple[k])) {
        throw StateError("label '" + tuple[k] + "' is not in the basis of register '" +
                         registers_[k].name + "'");
      }
    }
  }
}

void JointState::prune() {
  if (prune_threshold_ <= 0.0) return;
  for (auto it = amps_.begin(); it != amps_.end();) {
    if (std::abs(it->second) < prune_threshold_) {
      it = amps_.erase(it);
    } else {
      ++it;
    }
  }
}

JointState tensor(const JointState& a, const JointState& b) {
  std::vector<RegisterDecl> regs = a.registers();
  for (const auto& r : b.registers()) {
    for (const auto& ra : a.registers()) {
      if (ra.name == r.name) {
        throw StateError("tensor: duplicate register name '" + r.name + "'");
      }
    }
    regs.push_back(r);
  }
  JointState::AmplitudeMap amps;
  for (const auto& [ta, aa] : a.amplitudes()) {
    for (const auto& [tb, ab] : b.amplitudes()) {
      LabelTuple t = ta;
      t.insert(t.end(), tb.begin(), tb.end());
      amps[std::move(t)] = aa * ab;
    }
  }
  return JointState(std::move(regs), std::move(amps), a.prune_threshold());
}

complexd inner_product(const JointState& a, const JointState& b) {
  if (a.registers() != b.registers()) {
    throw StateError("inner_product: register declarations differ");
  }
  complexd dot{0.0, 0.0};
  for (const auto& [tuple, amp] : a.amplitudes()) {
    dot += std::conj(amp) * b.amplitude(tuple);
  }
  return dot;
}

}  // namespace ifm
