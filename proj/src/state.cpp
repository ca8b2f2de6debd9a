#include "gwvn/state.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace gwvn {

StateVector::StateVector(Eigen::VectorXcd amplitudes) : amps_(std::move(amplitudes)) {
  if (amps_.size() == 0) throw std::invalid_argument("StateVector: dimension must be >= 1");
  const double norm_sq = amps_.squaredNorm();
  if (!(std::abs(norm_sq - 1.0) <= kNormTolerance)) {
    throw std::invalid_argument("StateVector: squared norm " + std::to_string(norm_sq) +
                                " is not 1");
  }
}

std::vector<double> StateVector::probabilities() const {
  std::vector<double> p(dim());
  for (std::size_t j = 0; j < p.size(); ++j) p[j] = std::min(1.0, std::norm(amps_(static_cast<Eigen::Index>(j))));
  return p;
}

ProbabilityVector::ProbabilityVector(std::vector<double> probs) : probs_(std::move(probs)) {
  if (probs_.empty()) throw std::invalid_argument("ProbabilityVector: empty");
  double total = 0.0;
  for (std::size_t j = 0; j < probs_.size(); ++j) {
    const double p = probs_[j];
    if (!(p >= 0.0 && p <= 1.0)) {
      throw std::invalid_argument("ProbabilityVector: entry " + std::to_string(j) + " = " +
                                  std::to_string(p) + " outside [0, 1]");
    }
    total += p;
  }
  if (!(std::abs(total - 1.0) <= kNormTolerance)) {
    throw std::invalid_argument("ProbabilityVector: entries sum to " + std::to_string(total));
  }
}

}  // namespace gwvn
