#include "density.hpp"

#include <cmath>
#include <map>

namespace ifm {

namespace {

std::vector<LabelTuple> product_basis(const std::vector<RegisterDecl>& regs) {
  std::vector<LabelTuple> basis{{}};
  for (const auto& reg : regs) {
    std::vector<LabelTuple> next;
    next.reserve(basis.size() * reg.labels.size());
    for (const auto& prefix : basis) {
      for (const auto& label : reg.labels) {
        LabelTuple t = prefix;
        t.push_back(label);
        next.push_back(std::move(t));
      }
    }
    basis = std::move(next);
  }
  return basis;
}

}  // namespace

DensityMatrix::DensityMatrix(std::vector<RegisterDecl> registers, Eigen::MatrixXcd matrix)
    : registers_(std::move(registers)), basis_(product_basis(registers_)), m_(std::move(matrix)) {
  if (registers_.empty()) throw StateError("density matrix needs at least one register");
  if (m_.rows() != m_.cols() || static_cast<std::size_t>(m_.rows()) != basis_.size()) {
    throw StateError("density matrix shape does not match its basis");
  }
}

DensityMatrix DensityMatrix::from_state(const JointState& s) {
  std::vector<std::size_t> strides(s.registers().size(), 1);
  for (std::size_t k = s.registers().size(); k-- > 1;) {
    strides[k - 1] = strides[k] * s.registers()[k].labels.size();
  }
  auto index_of = [&](const LabelTuple& t) {
    std::size_t idx = 0;
    for (std::size_t k = 0; k < t.size(); ++k) {
      idx += strides[k] * s.registers()[k].label_index(t[k]);
    }
    return idx;
  };
  std::size_t dim = 1;
  for (const auto& r : s.registers()) dim *= r.labels.size();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim),
                                              static_cast<Eigen::Index>(dim));
  for (const auto& [ti, ai] : s.amplitudes()) {
    const auto i = static_cast<Eigen::Index>(index_of(ti));
    for (const auto& [tj, aj] : s.amplitudes()) {
      const auto j = static_cast<Eigen::Index>(index_of(tj));
      m(i, j) = ai * std::conj(aj);
    }
  }
  return DensityMatrix(s.registers(), std::move(m));
}

std::string DensityMatrix::basis_label(std::size_t index) const {
  const auto& tuple = basis_.at(index);
  std::string s;
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    if (i) s += ",";
    s += tuple[i];
  }
  return s;
}

std::size_t DensityMatrix::basis_index(const LabelTuple& tuple) const {
  if (tuple.size() != registers_.size()) {
    throw StateError("basis tuple arity does not match retained registers");
  }
  std::size_t idx = 0;
  for (std::size_t k = 0; k < tuple.size(); ++k) {
    idx = idx * registers_[k].labels.size() + registers_[k].label_index(tuple[k]);
  }
  return idx;
}

complexd DensityMatrix::entry(const LabelTuple& row, const LabelTuple& col) const {
  return m_(static_cast<Eigen::Index>(basis_index(row)),
            static_cast<Eigen::Index>(basis_index(col)));
}

double DensityMatrix::trace_real() const { return m_.trace().real(); }

DensityMatrix DensityMatrix::normalized() const {
  const double tr = trace_real();
  if (tr <= 1e-12) throw StateError("cannot normalize a density matrix with (near-)zero trace");
  return DensityMatrix(registers_, m_ / tr);
}

DensityMatrix DensityMatrix::partial_trace(const std::vector<std::string>& keep) const {
  if (keep.empty()) throw StateError("partial_trace: keep set must be non-empty");
  std::vector<bool> kept(registers_.size(), false);
  for (const auto& name : keep) {
    bool found = false;
    for (std::size_t k = 0; k < registers_.size(); ++k) {
      if (registers_[k].name == name) {
        kept[k] = true;
        found = true;
      }
    }
    if (!found) throw StateError("partial_trace: no register named '" + name + "'");
  }

  std::vector<RegisterDecl> kept_regs;
  for (std::size_t k = 0; k < registers_.size(); ++k) {
    if (kept[k]) kept_regs.push_back(registers_[k]);
  }

  // Full index -> (kept index, traced index).
  std::vector<std::size_t> dims;
  for (const auto& r : registers_) dims.push_back(r.labels.size());
  auto split = [&](std::size_t full) {
    std::size_t kept_idx = 0, traced_idx = 0;
    for (std::size_t k = 0; k < dims.size(); ++k) {
      std::size_t radix = 1;
      for (std::size_t j = k + 1; j < dims.size(); ++j) radix *= dims[j];
      const std::size_t digit = (full / radix) % dims[k];
      if (kept[k]) {
        kept_idx = kept_idx * dims[k] + digit;
      } else {
        traced_idx = traced_idx * dims[k] + digit;
      }
    }
    return std::pair<std::size_t, std::size_t>{kept_idx, traced_idx};
  };

  std::size_t kept_dim = 1;
  for (std::size_t k = 0; k < dims.size(); ++k) {
    if (kept[k]) kept_dim *= dims[k];
  }
  Eigen::MatrixXcd reduced = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(kept_dim),
                                                    static_cast<Eigen::Index>(kept_dim));
  const auto full_dim = static_cast<std::size_t>(m_.rows());
  for (std::size_t i = 0; i < full_dim; ++i) {
    const auto [ik, it] = split(i);
    for (std::size_t j = 0; j < full_dim; ++j) {
      const auto [jk, jt] = split(j);
      if (it != jt) continue;
      reduced(static_cast<Eigen::Index>(ik), static_cast<Eigen::Index>(jk)) +=
          m_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
  }
  return DensityMatrix(std::move(kept_regs), std::move(reduced));
}

DensityMatrix DensityMatrix::restricted(
    const std::vector<std::vector<std::string>>& labels_per_register) const {
  if (labels_per_register.size() != registers_.size()) {
    throw StateError("restricted: one label subset per register required");
  }
  std::vector<RegisterDecl> regs;
  for (std::size_t k = 0; k < registers_.size(); ++k) {
    for (const auto& l : labels_per_register[k]) {
      if (!registers_[k].has_label(l)) {
        throw StateError("restricted: label '" + l + "' not in register '" +
                         registers_[k].name + "'");
      }
    }
    regs.push_back({registers_[k].name, labels_per_register[k]});
  }
  const auto sub_basis = product_basis(regs);
  Eigen::MatrixXcd block(static_cast<Eigen::Index>(sub_basis.size()),
                         static_cast<Eigen::Index>(sub_basis.size()));
  for (std::size_t i = 0; i < sub_basis.size(); ++i) {
    for (std::size_t j = 0; j < sub_basis.size(); ++j) {
      block(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          entry(sub_basis[i], sub_basis[j]);
    }
  }
  return DensityMatrix(std::move(regs), std::move(block));
}

double DensityMatrix::hermiticity_defect() const {
  return (m_ - m_.adjoint()).cwiseAbs().maxCoeff();
}

double DensityMatrix::min_eigenvalue() const {
  // Symmetrize first so the solver sees an exactly Hermitian input.
  const Eigen::MatrixXcd h = (m_ + m_.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

void DensityMatrix::validate(double herm_tol, double trace_tol, double psd_tol) const {
  if (hermiticity_defect() > herm_tol) {
    throw StateError("density matrix is not Hermitian within tolerance");
  }
  if (std::abs(trace_real() - 1.0) > trace_tol) {
    throw StateError("density matrix trace deviates from 1");
  }
  if (min_eigenvalue() < -psd_tol) {
    throw StateError("density matrix has a negative eigenvalue beyond tolerance");
  }
}

DensityMatrix to_density(const JointState& s) { return DensityMatrix::from_state(s); }

DensityMatrix partial_trace(const DensityMatrix& d, const std::vector<std::string>& keep) {
  return d.partial_trace(keep);
}

}  // namespace ifm
