#include "gwvn/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace gwvn {

BasisRotation::BasisRotation(Eigen::MatrixXcd unitary) : u_(std::move(unitary)) {
  if (u_.rows() != u_.cols() || u_.rows() == 0) {
    throw std::invalid_argument("BasisRotation: matrix must be square and nonempty");
  }
  const Eigen::MatrixXcd gram = u_.adjoint() * u_;
  const auto n = gram.rows();
  for (Eigen::Index c = 0; c < n; ++c)
    for (Eigen::Index r = 0; r < n; ++r) {
      const Complex expected = (r == c) ? Complex(1.0) : Complex(0.0);
      if (std::abs(gram(r, c) - expected) > 1e-10) {
        throw std::invalid_argument("BasisRotation: columns are not orthonormal");
      }
    }
}

BasisRotation BasisRotation::unchecked(Eigen::MatrixXcd unitary) {
  return BasisRotation(std::move(unitary), NoCheck{});
}

double shannon_kernel(std::span<const double> p) noexcept {
  if (p.size() == 1) return 0.0;
  double s = 0.0;
  for (const double x : p) {
    if (x > 0.0) s -= x * std::log(x);
  }
  return s;
}

double shannon(const ProbabilityVector& p) { return shannon_kernel(p.values()); }

std::vector<double> overlap_probabilities(const StateVector& state, const BasisRotation& basis) {
  if (basis.dim() != state.dim()) {
    throw std::invalid_argument("overlap_probabilities: basis dimension " +
                                std::to_string(basis.dim()) + " != state dimension " +
                                std::to_string(state.dim()));
  }
  const Eigen::VectorXcd overlaps = basis.matrix().adjoint() * state.amplitudes();
  std::vector<double> p(state.dim());
  for (std::size_t j = 0; j < p.size(); ++j) p[j] = std::min(1.0, std::norm(overlaps(static_cast<Eigen::Index>(j))));
  return p;
}

double gwvn_entropy(const StateVector& state) {
  return shannon(ProbabilityVector(state.probabilities()));
}

double gwvn_entropy(const StateVector& state, const BasisRotation& basis) {
  return shannon(ProbabilityVector(overlap_probabilities(state, basis)));
}

double binary_entropy(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::domain_error("binary_entropy: p = " + std::to_string(p) + " outside [0, 1]");
  }
  double s = 0.0;
  if (p > 0.0) s -= p * std::log(p);
  if (p < 1.0) s -= (1.0 - p) * std::log1p(-p);
  return s;
}

}  // namespace gwvn
