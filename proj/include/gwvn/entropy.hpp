#pragma once

#include <span>
#include <vector>

#include <Eigen/Core>

#include "gwvn/state.hpp"

namespace gwvn {

/// Orthonormal basis given as the columns of a unitary matrix.
class BasisRotation {
 public:
  /// Checks U^dagger U = I entrywise within 1e-10 (O(N^3)).
  explicit BasisRotation(Eigen::MatrixXcd unitary);

  /// Skips the unitarity check; for bases built from orthonormal factors.
  static BasisRotation unchecked(Eigen::MatrixXcd unitary);

  std::size_t dim() const { return static_cast<std::size_t>(u_.cols()); }
  const Eigen::MatrixXcd& matrix() const { return u_; }

 private:
  struct NoCheck {};
  BasisRotation(Eigen::MatrixXcd unitary, NoCheck) : u_(std::move(unitary)) {}
  Eigen::MatrixXcd u_;
};

/// -sum p ln p with 0 ln 0 = 0. No validation; hot-loop kernel.
double shannon_kernel(std::span<const double> p) noexcept;

/// Shannon entropy in nats of a validated distribution.
double shannon(const ProbabilityVector& p);

/// |<phi_j|state>|^2 for each basis column phi_j.
std::vector<double> overlap_probabilities(const StateVector& state, const BasisRotation& basis);

/// Entropy of the state's distribution over the computational basis.
double gwvn_entropy(const StateVector& state);

/// Entropy of the state's distribution over the columns of `basis`.
/// Throws std::invalid_argument on dimension mismatch.
double gwvn_entropy(const StateVector& state, const BasisRotation& basis);

/// f(p) = -p ln p - (1-p) ln(1-p); throws std::domain_error outside [0, 1].
double binary_entropy(double p);

}  // namespace gwvn
