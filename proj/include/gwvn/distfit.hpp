#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace gwvn::distfit {

/// Logistic model for the normalized entropy s = S / ln N.
struct FDParams {
  double mu = 0.0;  ///< Psi(N+1) - Psi(2), in nats
  double c = 0.0;   ///< mu sqrt(pi^2 N / (pi^2 - 9))
  std::uint64_t dim = 2;

  /// mu / ln N, where the CDF crosses 1/2.
  double midpoint() const;
};

/// Throws std::invalid_argument for N < 2.
FDParams fd_params(std::uint64_t dim);

/// 1 / (1 + exp(-c (s - mu/ln N))).
///
/// The model lives on the real line; on [0, 1] it is used as-is, so
/// fd_cdf(1) - fd_cdf(0) falls short of 1 by the (tiny) mass outside.
double fd_cdf(double s, const FDParams& params);

/// d fd_cdf / ds.
double fd_pdf(double s, const FDParams& params);

/// Sorted normalized entropies.
class EmpiricalCDF {
 public:
  /// Sorts `normalized`; throws if any value lies outside [0, 1].
  explicit EmpiricalCDF(std::vector<double> normalized);

  /// Divides raw entropies by ln N and sorts. N must be >= 2.
  static EmpiricalCDF from_entropies(std::span<const double> entropies, std::uint64_t dim);

  std::size_t size() const { return s_.size(); }
  std::span<const double> values() const { return s_; }

  /// Fraction of samples <= s.
  double operator()(double s) const;

 private:
  std::vector<double> s_;
};

/// sup_s |F_emp(s) - fd_cdf(s)|. Throws std::invalid_argument when empty.
/// Meaningful for M >= 100.
double ks_distance(const EmpiricalCDF& samples, const FDParams& params);

/// Equal-width bins with Freedman-Diaconis width 2 IQR / M^(1/3).
struct Histogram {
  std::vector<double> edges;  ///< size = counts.size() + 1
  std::vector<std::size_t> counts;
};

Histogram freedman_diaconis(const EmpiricalCDF& samples);

struct ChiSquare {
  double statistic = 0.0;
  std::size_t dof = 0;  ///< bins used - 1
};

/// Pearson chi-square of the histogram against fd_cdf bin masses; bins with
/// expected count < 5 are pooled into their neighbour.
ChiSquare chi_square(const Histogram& hist, std::size_t total, const FDParams& params);

}  // namespace gwvn::distfit
