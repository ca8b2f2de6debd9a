#include "gwvn/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

#include "gwvn/analytic.hpp"
#include "gwvn/sampler.hpp"
#include "gwvn/specfun.hpp"

namespace gwvn::dynamics {

Hamiltonian::Hamiltonian(Eigen::MatrixXcd h) : h_(std::move(h)) {
  if (h_.rows() != h_.cols() || h_.rows() == 0) {
    throw std::invalid_argument("Hamiltonian: matrix must be square and nonempty");
  }
  if ((h_ - h_.adjoint()).cwiseAbs().maxCoeff() > 1e-10) {
    throw std::invalid_argument("Hamiltonian: matrix is not Hermitian");
  }
  real_ = h_.imag().cwiseAbs().maxCoeff() == 0.0;
}

Hamiltonian goe_hamiltonian(std::size_t dim, std::uint64_t seed) {
  if (dim < 2) throw std::invalid_argument("goe_hamiltonian: N must be >= 2");
  const auto n = static_cast<Eigen::Index>(dim);
  auto engine = make_engine(seed, 0);
  std::normal_distribution<double> normal;
  Eigen::MatrixXd a(n, n);
  for (Eigen::Index c = 0; c < n; ++c)
    for (Eigen::Index r = 0; r < n; ++r) a(r, c) = normal(engine);
  // (A + A^T) / sqrt(2N): off-diagonal variance 1/N, diagonal 2/N.
  const Eigen::MatrixXd h = (a + a.transpose()) / std::sqrt(2.0 * static_cast<double>(dim));
  return Hamiltonian(h.cast<Complex>());
}

Hamiltonian equally_spaced_hamiltonian(std::size_t dim, double spacing) {
  if (dim == 0) throw std::invalid_argument("equally_spaced_hamiltonian: N must be >= 1");
  Eigen::VectorXd e(static_cast<Eigen::Index>(dim));
  for (Eigen::Index j = 0; j < e.size(); ++j) e(j) = spacing * static_cast<double>(j);
  return Hamiltonian(e.cast<Complex>().asDiagonal().toDenseMatrix());
}

Propagator::Propagator(const Hamiltonian& h) {
  if (h.is_real()) {
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h.matrix().real());
    if (solver.info() != Eigen::Success) throw std::runtime_error("Propagator: eigensolve failed");
    energies_ = solver.eigenvalues();
    vectors_ = solver.eigenvectors().cast<Complex>();
  } else {
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h.matrix());
    if (solver.info() != Eigen::Success) throw std::runtime_error("Propagator: eigensolve failed");
    energies_ = solver.eigenvalues();
    vectors_ = solver.eigenvectors();
  }
}

Eigen::VectorXcd Propagator::eigen_amplitudes(const StateVector& psi) const {
  if (psi.dim() != dim()) {
    throw std::invalid_argument("Propagator: state dimension " + std::to_string(psi.dim()) +
                                " != " + std::to_string(dim()));
  }
  return vectors_.adjoint() * psi.amplitudes();
}

StateVector Propagator::evolve(const StateVector& psi0, double t) const {
  if (t == 0.0) return psi0;
  Eigen::VectorXcd a = eigen_amplitudes(psi0);
  for (Eigen::Index j = 0; j < a.size(); ++j) a(j) *= std::polar(1.0, -energies_(j) * t);
  Eigen::VectorXcd out = vectors_ * a;
  // Unitarity holds to rounding; remove the O(N eps) drift.
  out /= out.norm();
  return StateVector(std::move(out));
}

double Propagator::survival(const StateVector& psi0, double t) const {
  const Eigen::VectorXcd a = eigen_amplitudes(psi0);
  if (t == 0.0) return 1.0;
  Complex sum = 0.0;
  for (Eigen::Index j = 0; j < a.size(); ++j) sum += std::norm(a(j)) * std::polar(1.0, -energies_(j) * t);
  return std::clamp(std::norm(sum), 0.0, 1.0);
}

StateVector evolve(const Hamiltonian& h, const StateVector& psi0, double t) {
  return Propagator(h).evolve(psi0, t);
}

double survival(const Hamiltonian& h, const StateVector& psi0, double t) {
  return Propagator(h).survival(psi0, t);
}

double predicted_entropy(double p, std::uint64_t dim) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::domain_error("predicted_entropy: p = " + std::to_string(p) + " outside [0, 1]");
  }
  if (dim < 2) throw std::invalid_argument("predicted_entropy: N must be >= 2");
  // Psi(N) - Psi(2) is the mean entropy in the (N-1)-dimensional complement.
  return binary_entropy(p) + (1.0 - p) * analytic::mean_entropy(dim - 1);
}

namespace {

Eigen::MatrixXcd reflection_matrix(const StateVector& psi0) {
  const auto n = static_cast<Eigen::Index>(psi0.dim());
  const Complex first = psi0[0];
  const Complex phase = std::abs(first) > 0.0 ? std::conj(first) / std::abs(first) : Complex(1.0);
  Eigen::VectorXcd w = phase * psi0.amplitudes();
  w(0) = std::abs(w(0));

  Eigen::VectorXcd v = -w;
  v(0) += 1.0;
  const double v_norm_sq = v.squaredNorm();
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(n, n);
  if (v_norm_sq > 1e-28) u.noalias() -= (2.0 / v_norm_sq) * v * v.adjoint();
  return u;
}

}  // namespace

CompletedBasis CompletedBasis::reflection(const StateVector& psi0) {
  return CompletedBasis(BasisRotation::unchecked(reflection_matrix(psi0)));
}

CompletedBasis CompletedBasis::haar_random(const StateVector& psi0, std::uint64_t seed,
                                           std::uint64_t index) {
  Eigen::MatrixXcd u = reflection_matrix(psi0);
  const auto n = u.cols();
  if (n > 1) {
    const Eigen::MatrixXcd v = haar_unitary(static_cast<std::size_t>(n - 1), seed, index);
    const Eigen::MatrixXcd rest = u.rightCols(n - 1) * v;
    u.rightCols(n - 1) = rest;
  }
  return CompletedBasis(BasisRotation::unchecked(std::move(u)));
}

double measured_entropy(const StateVector& state, const CompletedBasis& basis) {
  return gwvn_entropy(state, basis.basis());
}

std::vector<double> RelaxationTrace::deviation() const {
  std::vector<double> d(times.size());
  for (std::size_t k = 0; k < d.size(); ++k) d[k] = measured[k] - predicted[k];
  return d;
}

double RelaxationTrace::max_abs_deviation() const {
  double worst = 0.0;
  for (const double d : deviation()) worst = std::max(worst, std::abs(d));
  return worst;
}

std::vector<double> time_grid(double tmax, std::size_t points) {
  if (points < 2) throw std::invalid_argument("time_grid: need at least 2 points");
  if (!(tmax > 0.0)) throw std::invalid_argument("time_grid: tmax must be > 0");
  std::vector<double> t(points);
  for (std::size_t k = 0; k < points; ++k)
    t[k] = tmax * static_cast<double>(k) / static_cast<double>(points - 1);
  return t;
}

RelaxationTrace relaxation_trace(const Propagator& prop, const StateVector& psi0,
                                 const CompletedBasis& basis, std::span<const double> times) {
  if (times.empty() || times.front() != 0.0) {
    throw std::invalid_argument("relaxation_trace: time grid must start at 0");
  }
  if (basis.dim() != psi0.dim() || prop.dim() != psi0.dim()) {
    throw std::invalid_argument("relaxation_trace: dimension mismatch");
  }
  const auto n = static_cast<std::uint64_t>(psi0.dim());
  RelaxationTrace trace;
  trace.times.assign(times.begin(), times.end());
  for (const double t : times) {
    const StateVector psi_t = prop.evolve(psi0, t);
    const double p = prop.survival(psi0, t);
    trace.survival.push_back(p);
    trace.measured.push_back(measured_entropy(psi_t, basis));
    trace.predicted.push_back(n >= 2 ? predicted_entropy(p, n) : 0.0);
  }
  return trace;
}

RelaxationTrace relaxation_trace(const Hamiltonian& h, const StateVector& psi0,
                                 const CompletedBasis& basis, std::span<const double> times) {
  return relaxation_trace(Propagator(h), psi0, basis, times);
}

RelaxationTrace mean_trace(std::span<const RelaxationTrace> traces) {
  if (traces.empty()) throw std::invalid_argument("mean_trace: no traces");
  RelaxationTrace out;
  out.times = traces.front().times;
  const std::size_t k = out.times.size();
  out.survival.assign(k, 0.0);
  out.measured.assign(k, 0.0);
  out.predicted.assign(k, 0.0);
  for (const auto& tr : traces) {
    if (tr.times != out.times) throw std::invalid_argument("mean_trace: time grids differ");
    for (std::size_t i = 0; i < k; ++i) {
      out.survival[i] += tr.survival[i];
      out.measured[i] += tr.measured[i];
      out.predicted[i] += tr.predicted[i];
    }
  }
  const double inv = 1.0 / static_cast<double>(traces.size());
  for (std::size_t i = 0; i < k; ++i) {
    out.survival[i] *= inv;
    out.measured[i] *= inv;
    out.predicted[i] *= inv;
  }
  return out;
}

}  // namespace gwvn::dynamics
