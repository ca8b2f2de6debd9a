#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Core>

namespace gwvn {

using Complex = std::complex<double>;

/// Tolerance on sum-to-one checks for inputs handed to the library.
inline constexpr double kNormTolerance = 1e-10;

/// Unit-norm vector of N complex amplitudes, a point on the sphere S^{2N-1}.
///
/// The global phase is kept as sampled; every quantity computed from a state
/// depends on |z_j|^2 only.
class StateVector {
 public:
  /// Throws std::invalid_argument if empty or if | ||z||^2 - 1 | > kNormTolerance.
  explicit StateVector(Eigen::VectorXcd amplitudes);

  std::size_t dim() const { return static_cast<std::size_t>(amps_.size()); }
  const Eigen::VectorXcd& amplitudes() const { return amps_; }
  Complex operator[](std::size_t j) const { return amps_(static_cast<Eigen::Index>(j)); }

  /// |z_j|^2 in index order.
  std::vector<double> probabilities() const;

 private:
  Eigen::VectorXcd amps_;
};

/// Nonnegative weights summing to one.
class ProbabilityVector {
 public:
  /// Rejects empty input, entries outside [0, 1] and |sum - 1| > kNormTolerance.
  /// No renormalization is attempted.
  explicit ProbabilityVector(std::vector<double> probs);

  std::size_t dim() const { return probs_.size(); }
  std::span<const double> values() const { return probs_; }
  double operator[](std::size_t j) const { return probs_[j]; }

 private:
  std::vector<double> probs_;
};

}  // namespace gwvn
