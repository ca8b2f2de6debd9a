#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "gwvn/entropy.hpp"
#include "gwvn/state.hpp"

// Unitary evolution under a fixed Hamiltonian (hbar = 1) and the entropy of
// the evolving state measured in a basis whose first vector is the initial
// state.

namespace gwvn::dynamics {

/// Hermitian matrix; energies are dimensionless.
class Hamiltonian {
 public:
  /// Throws std::invalid_argument unless square, nonempty and Hermitian
  /// within 1e-10.
  explicit Hamiltonian(Eigen::MatrixXcd h);

  std::size_t dim() const { return static_cast<std::size_t>(h_.rows()); }
  const Eigen::MatrixXcd& matrix() const { return h_; }
  bool is_real() const { return real_; }

 private:
  Eigen::MatrixXcd h_;
  bool real_ = false;
};

/// GOE matrix: symmetric, off-diagonal variance 1/N, diagonal variance 2/N,
/// so the spectrum fills the semicircle on [-2, 2]. Requires N >= 2.
Hamiltonian goe_hamiltonian(std::size_t dim, std::uint64_t seed);

/// diag(0, s, 2s, ...): degenerate gaps, no chaos. Contrast model.
Hamiltonian equally_spaced_hamiltonian(std::size_t dim, double spacing = 1.0);

/// Spectral decomposition of a Hamiltonian, computed once.
class Propagator {
 public:
  explicit Propagator(const Hamiltonian& h);

  std::size_t dim() const { return static_cast<std::size_t>(energies_.size()); }
  const Eigen::VectorXd& energies() const { return energies_; }
  const Eigen::MatrixXcd& eigenvectors() const { return vectors_; }

  /// a_j = <E_j|psi>.
  Eigen::VectorXcd eigen_amplitudes(const StateVector& psi) const;

  StateVector evolve(const StateVector& psi0, double t) const;

  /// |<psi0|psi0(t)>|^2 = |sum_j |a_j|^2 exp(-i E_j t)|^2.
  double survival(const StateVector& psi0, double t) const;

 private:
  Eigen::VectorXd energies_;
  Eigen::MatrixXcd vectors_;
};

StateVector evolve(const Hamiltonian& h, const StateVector& psi0, double t);
double survival(const Hamiltonian& h, const StateVector& psi0, double t);

/// f(p) + (1 - p)(Psi(N) - Psi(2)). Requires p in [0, 1], N >= 2.
double predicted_entropy(double p, std::uint64_t dim);

/// Orthonormal basis whose column 0 is the initial state up to a phase.
class CompletedBasis {
 public:
  /// Householder reflection sending e_1 to psi0 (with psi0's first amplitude
  /// rotated real); deterministic.
  static CompletedBasis reflection(const StateVector& psi0);

  /// psi0 followed by a Haar-random orthonormal basis of its complement.
  static CompletedBasis haar_random(const StateVector& psi0, std::uint64_t seed,
                                    std::uint64_t index = 0);

  std::size_t dim() const { return basis_.dim(); }
  const BasisRotation& basis() const { return basis_; }

 private:
  explicit CompletedBasis(BasisRotation basis) : basis_(std::move(basis)) {}
  BasisRotation basis_;
};

double measured_entropy(const StateVector& state, const CompletedBasis& basis);

struct RelaxationTrace {
  std::vector<double> times;
  std::vector<double> survival;
  std::vector<double> measured;
  std::vector<double> predicted;

  std::size_t size() const { return times.size(); }
  std::vector<double> deviation() const;
  double max_abs_deviation() const;
};

/// `points` equally spaced times on [0, tmax]; points >= 2.
std::vector<double> time_grid(double tmax, std::size_t points);

/// Throws std::invalid_argument if the grid is empty or does not start at 0.
RelaxationTrace relaxation_trace(const Propagator& prop, const StateVector& psi0,
                                 const CompletedBasis& basis, std::span<const double> times);

RelaxationTrace relaxation_trace(const Hamiltonian& h, const StateVector& psi0,
                                 const CompletedBasis& basis, std::span<const double> times);

/// Pointwise mean of traces sharing one time grid.
RelaxationTrace mean_trace(std::span<const RelaxationTrace> traces);

}  // namespace gwvn::dynamics
