#include "gwvn/levy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gwvn/analytic.hpp"
#include "gwvn/specfun.hpp"

namespace gwvn::levy {
namespace {
constexpr double kPiCubed = specfun::kPi * specfun::kPi * specfun::kPi;
constexpr double kLn2 = 0.69314718055994530941723212145817657;
}  // namespace

double lipschitz_sq(std::span<const double> probs) noexcept {
  double acc = 0.0;
  for (const double p : probs) {
    if (p > 0.0) {
      const double g = std::log(p) + 1.0;
      acc += p * g * g;
    }
  }
  return 4.0 * acc;
}

double lipschitz_sq(const StateVector& state) { return lipschitz_sq(state.probabilities()); }

double lipschitz_sq_sup(std::uint64_t dim) {
  if (dim == 0) throw std::invalid_argument("lipschitz_sq_sup: N must be >= 1");
  const double g = 1.0 - std::log(static_cast<double>(dim));
  return 4.0 * g * g;
}

double levy_exponent(std::uint64_t dim, double eta_sq) {
  if (dim == 0) throw std::invalid_argument("levy_exponent: N must be >= 1");
  if (!(eta_sq > 0.0)) throw std::invalid_argument("levy_exponent: eta^2 must be > 0");
  return 2.0 * static_cast<double>(dim) / (9.0 * kPiCubed * eta_sq);
}

double levy_bound(double delta, std::uint64_t dim, double eta_sq) {
  if (!(delta >= 0.0)) throw std::invalid_argument("levy_bound: delta must be >= 0");
  return 2.0 * std::exp(-levy_exponent(dim, eta_sq) * delta * delta);
}

double max_variance_bound(std::uint64_t dim, double eta_sq) {
  if (dim < 3) throw std::invalid_argument("max_variance_bound: N must be >= 3");
  return (1.0 + kLn2) / levy_exponent(dim, eta_sq);
}

double max_variance_density(double x, std::uint64_t dim, double eta_sq) {
  const double f = levy_exponent(dim, eta_sq);
  if (x < std::sqrt(kLn2 / f)) return 0.0;
  return 4.0 * f * x * std::exp(-f * x * x);
}

bool TailReport::bound_holds() const {
  for (std::size_t k = 0; k < deltas.size(); ++k) {
    if (empirical_tail[k] > levy_bound[k]) return false;
  }
  return true;
}

TailReport empirical_tail(std::span<const double> samples, double center,
                          std::span<const double> deltas, std::uint64_t dim, double eta_sq) {
  if (deltas.empty()) throw std::invalid_argument("empirical_tail: empty delta grid");
  if (samples.empty()) throw std::invalid_argument("empirical_tail: no samples");

  std::vector<double> dev(samples.size());
  std::transform(samples.begin(), samples.end(), dev.begin(),
                 [center](double s) { return std::abs(s - center); });
  std::sort(dev.begin(), dev.end());

  TailReport r;
  r.eta_sq = eta_sq;
  r.deltas.assign(deltas.begin(), deltas.end());
  const auto m = static_cast<double>(dev.size());
  for (const double d : deltas) {
    // count of |S - center| >= d
    const auto first = std::lower_bound(dev.begin(), dev.end(), d);
    r.empirical_tail.push_back(static_cast<double>(dev.end() - first) / m);
    r.levy_bound.push_back(levy_bound(d, dim, eta_sq));
  }
  return r;
}

std::vector<double> default_delta_grid(std::uint64_t dim, std::size_t points) {
  if (points < 2) throw std::invalid_argument("default_delta_grid: need at least 2 points");
  const double sigma = std::sqrt(analytic::variance_entropy(dim));
  if (!(sigma > 0.0)) throw std::invalid_argument("default_delta_grid: zero variance at this N");
  const double lo = std::log(sigma / 3.0);
  const double hi = std::log(10.0 * sigma);
  std::vector<double> grid(points);
  for (std::size_t k = 0; k < points; ++k)
    grid[k] = std::exp(lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(points - 1));
  return grid;
}

}  // namespace gwvn::levy
