#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "gwvn/state.hpp"

// Concentration-of-measure checks for the entropy functional on S^{2N-1}.

namespace gwvn::levy {

/// 4 sum_j p_j (ln p_j + 1)^2 over p_j = |z_j|^2 (zero entries contribute 0).
double lipschitz_sq(std::span<const double> probs) noexcept;
double lipschitz_sq(const StateVector& state);

/// 4 (1 - ln N)^2, the value of lipschitz_sq at the uniform distribution.
double lipschitz_sq_sup(std::uint64_t dim);

/// Smallest N for which lipschitz_sq_sup bounds lipschitz_sq on the whole
/// simplex. For 8 <= N <= 13 one weight near 0.7-0.85 with the rest equal
/// gives a larger value, so N > e^2 is not enough.
inline constexpr std::uint64_t kSupremumValidFrom = 14;

/// 2 exp(-2 N delta^2 / (9 pi^3 eta^2)).
double levy_bound(double delta, std::uint64_t dim, double eta_sq);

/// Exponent coefficient f_N = 2N / (9 pi^3 eta^2).
double levy_exponent(std::uint64_t dim, double eta_sq);

/// 9 pi^3 (1 + ln 2) eta^2 / (2N): the variance of the widest deviation law
/// compatible with levy_bound. Requires N >= 3, eta_sq > 0.
double max_variance_bound(std::uint64_t dim, double eta_sq);

/// Density of |S - <S>| for that widest law: 4 f x exp(-f x^2) for
/// x >= sqrt(ln 2 / f), zero below.
double max_variance_density(double x, std::uint64_t dim, double eta_sq);

struct TailReport {
  std::vector<double> deltas;
  std::vector<double> empirical_tail;  ///< Pr(|S - center| >= delta)
  std::vector<double> levy_bound;
  double eta_sq = 0.0;  ///< Lipschitz square used in the bound

  /// empirical_tail <= levy_bound at every delta.
  bool bound_holds() const;
};

/// Exceedance fractions of |S - center| on `deltas`, paired with the bound
/// at `eta_sq`. Throws std::invalid_argument for an empty grid or sample set.
TailReport empirical_tail(std::span<const double> samples, double center,
                          std::span<const double> deltas, std::uint64_t dim, double eta_sq);

/// 30 log-spaced deltas from sigma/3 to 10 sigma, sigma = sqrt(variance_entropy(N)).
std::vector<double> default_delta_grid(std::uint64_t dim, std::size_t points = 30);

}  // namespace gwvn::levy
