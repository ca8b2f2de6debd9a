#include "gwvn/bipartite.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

#include "gwvn/entropy.hpp"

namespace gwvn {

BipartiteState::BipartiteState(Eigen::MatrixXcd coeffs) : c_(std::move(coeffs)) {
  if (c_.size() == 0) throw std::invalid_argument("BipartiteState: dimensions must be >= 1");
  const double norm_sq = c_.squaredNorm();
  if (!(std::abs(norm_sq - 1.0) <= kNormTolerance)) {
    throw std::invalid_argument("BipartiteState: squared norm " + std::to_string(norm_sq) +
                                " is not 1");
  }
}

StateVector BipartiteState::flattened() const {
  const auto rows = c_.rows();
  const auto cols = c_.cols();
  Eigen::VectorXcd v(rows * cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index a = 0; a < cols; ++a) v(i * cols + a) = c_(i, a);
  return StateVector(std::move(v));
}

ReducedState::ReducedState(Eigen::MatrixXcd rho) : rho_(std::move(rho)) {
  if (rho_.rows() != rho_.cols() || rho_.rows() == 0) {
    throw std::invalid_argument("ReducedState: matrix must be square and nonempty");
  }
  if ((rho_ - rho_.adjoint()).cwiseAbs().maxCoeff() > 1e-10) {
    throw std::invalid_argument("ReducedState: matrix is not Hermitian");
  }
  const double tr = rho_.trace().real();
  if (!(std::abs(tr - 1.0) <= 1e-10)) {
    throw std::invalid_argument("ReducedState: trace " + std::to_string(tr) + " is not 1");
  }
}

ReducedState reduce(const BipartiteState& state, Side side) {
  const auto& c = state.coeffs();
  if (side == Side::system) return ReducedState(c * c.adjoint());
  return ReducedState(c.transpose() * c.conjugate());
}

std::vector<double> marginal_weights(const BipartiteState& state, Side side) {
  const auto& c = state.coeffs();
  if (side == Side::system) {
    std::vector<double> p(state.n());
    for (Eigen::Index i = 0; i < c.rows(); ++i) p[static_cast<std::size_t>(i)] = c.row(i).squaredNorm();
    return p;
  }
  std::vector<double> p(state.m());
  for (Eigen::Index a = 0; a < c.cols(); ++a) p[static_cast<std::size_t>(a)] = c.col(a).squaredNorm();
  return p;
}

double subsystem_entropy(const BipartiteState& state, Side side) {
  auto p = marginal_weights(state, side);
  for (auto& x : p) x = std::min(x, 1.0);
  return shannon(ProbabilityVector(std::move(p)));
}

double von_neumann_entropy(const ReducedState& rho) {
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho.matrix(), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("von_neumann_entropy: eigensolver did not converge");
  }
  double s = 0.0;
  for (const double lambda : solver.eigenvalues()) {
    if (lambda < -1e-8) {
      throw std::domain_error("von_neumann_entropy: eigenvalue " + std::to_string(lambda) +
                              " is negative");
    }
    const double x = std::clamp(lambda, 0.0, 1.0);
    if (x > 0.0) s -= x * std::log(x);
  }
  return s;
}

EntropyTriple entropy_triple(const BipartiteState& state) {
  const auto& c = state.coeffs();
  std::vector<double> joint;
  joint.reserve(static_cast<std::size_t>(c.size()));
  for (Eigen::Index i = 0; i < c.rows(); ++i)
    for (Eigen::Index a = 0; a < c.cols(); ++a) joint.push_back(std::norm(c(i, a)));
  return {subsystem_entropy(state, Side::system), subsystem_entropy(state, Side::environment),
          shannon_kernel(joint)};
}

}  // namespace gwvn
