#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Core>

#include "gwvn/state.hpp"

namespace gwvn {

/// Pure state of a system (dimension n) and environment (dimension m) held
/// as its amplitude matrix c(i, alpha).
class BipartiteState {
 public:
  /// Throws std::invalid_argument on an empty matrix or when
  /// |sum |c|^2 - 1| > kNormTolerance.
  explicit BipartiteState(Eigen::MatrixXcd coeffs);

  std::size_t n() const { return static_cast<std::size_t>(c_.rows()); }
  std::size_t m() const { return static_cast<std::size_t>(c_.cols()); }
  const Eigen::MatrixXcd& coeffs() const { return c_; }

  /// The nm-vector in the product basis, index i*m + alpha.
  StateVector flattened() const;

 private:
  Eigen::MatrixXcd c_;
};

enum class Side { system, environment };

/// Hermitian, unit-trace reduced density matrix.
class ReducedState {
 public:
  /// Checks hermiticity and trace within 1e-10. Positivity is checked by
  /// von_neumann_entropy, which has the eigenvalues at hand.
  explicit ReducedState(Eigen::MatrixXcd rho);

  std::size_t dim() const { return static_cast<std::size_t>(rho_.rows()); }
  const Eigen::MatrixXcd& matrix() const { return rho_; }

 private:
  Eigen::MatrixXcd rho_;
};

/// Partial trace: c c^dagger for the system, c^T conj(c) for the environment.
ReducedState reduce(const BipartiteState& state, Side side);

/// Diagonal weights p_ii of the reduced state of `side` (row or column
/// squared norms of c), without forming the full matrix.
std::vector<double> marginal_weights(const BipartiteState& state, Side side);

/// Shannon entropy of marginal_weights(state, side).
double subsystem_entropy(const BipartiteState& state, Side side);

/// -Tr rho ln rho. Eigenvalues below -1e-8 raise std::domain_error; the rest
/// are clamped to [0, 1].
double von_neumann_entropy(const ReducedState& rho);

struct EntropyTriple {
  double system = 0.0;
  double environment = 0.0;
  double total = 0.0;  ///< entropy of |c|^2 over the product basis

  double defect() const { return system + environment - total; }
};

EntropyTriple entropy_triple(const BipartiteState& state);

}  // namespace gwvn
