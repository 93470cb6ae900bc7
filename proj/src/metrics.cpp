#include "metrics.hpp"

#include <algorithm>
#include <cmath>

namespace ifm::metrics {

namespace {

// Hermitian square root with negative eigenvalues clamped to zero.
Eigen::MatrixXcd hermitian_sqrt(const Eigen::MatrixXcd& m) {
  const Eigen::MatrixXcd h = (m + m.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h);
  Eigen::VectorXd vals = solver.eigenvalues();
  for (Eigen::Index i = 0; i < vals.size(); ++i) vals(i) = std::sqrt(std::max(0.0, vals(i)));
  return solver.eigenvectors() * vals.asDiagonal() * solver.eigenvectors().adjoint();
}

}  // namespace

double purity(const DensityMatrix& d) { return (d.matrix() * d.matrix()).trace().real(); }

double l1_coherence(const DensityMatrix& d) {
  if (d.registers().size() != 1) {
    throw StateError("l1_coherence: expected a single atom register");
  }
  const auto& reg = d.registers()[0];
  if (reg.has_label("g")) {
    const auto g = static_cast<Eigen::Index>(reg.label_index("g"));
    if (d.matrix()(g, g).real() >= 1e-12) {
      throw StateError("l1_coherence: residual |g> population");
    }
  }
  double sum = 0.0;
  const auto i_plus = static_cast<Eigen::Index>(reg.label_index("m+"));
  const auto i_minus = static_cast<Eigen::Index>(reg.label_index("m-"));
  sum += std::abs(d.matrix()(i_plus, i_minus));
  sum += std::abs(d.matrix()(i_minus, i_plus));
  return sum;
}

double fidelity(const DensityMatrix& d, const JointState& target) {
  if (d.registers() != target.registers()) {
    throw StateError("fidelity: register declarations differ");
  }
  if (!target.is_normalized(1e-9)) {
    throw StateError("fidelity: target state is not normalized");
  }
  Eigen::VectorXcd c = Eigen::VectorXcd::Zero(d.dim());
  for (const auto& [tuple, amp] : target.amplitudes()) {
    c(static_cast<Eigen::Index>(d.basis_index(tuple))) = amp;
  }
  const double f = (c.adjoint() * d.matrix() * c).value().real();
  return std::max(0.0, f);
}

double concurrence(const DensityMatrix& d) {
  if (d.dim() != 4 || d.registers().size() != 2) {
    throw StateError("concurrence: expected a 4x4 matrix over two 2-level registers");
  }
  for (const auto& reg : d.registers()) {
    if (reg.labels != std::vector<std::string>{"m+", "m-"}) {
      throw StateError("concurrence: registers must carry the {m+, m-} basis");
    }
  }
  // Spin flip (sigma_y x sigma_y) in the product basis.
  Eigen::Matrix4cd flip = Eigen::Matrix4cd::Zero();
  flip(0, 3) = -1.0;
  flip(1, 2) = 1.0;
  flip(2, 1) = 1.0;
  flip(3, 0) = -1.0;

  const Eigen::MatrixXcd rho = d.matrix();
  const Eigen::MatrixXcd rho_tilde = flip * rho.conjugate() * flip;
  const Eigen::MatrixXcd sqrt_rho = hermitian_sqrt(rho);
  const Eigen::MatrixXcd r = sqrt_rho * rho_tilde * sqrt_rho;

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver((r + r.adjoint()) / 2.0,
                                                         Eigen::EigenvaluesOnly);
  // Eigenvalues that vanish in exact arithmetic come out as solver noise of
  // either sign; flooring them keeps sqrt from amplifying that noise.
  const double floor = 1e-12 * std::max(0.0, solver.eigenvalues().maxCoeff());
  std::vector<double> lambdas;
  for (Eigen::Index i = 0; i < 4; ++i) {
    const double ev = solver.eigenvalues()(i);
    lambdas.push_back(ev <= floor ? 0.0 : std::sqrt(ev));
  }
  std::sort(lambdas.begin(), lambdas.end(), std::greater<double>());
  return std::max(0.0, lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3]);
}

}  // namespace ifm::metrics
