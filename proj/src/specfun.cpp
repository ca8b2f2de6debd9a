#include "gwvn/specfun.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace gwvn::specfun {
namespace {

// Below this the argument is shifted up by recurrence before the asymptotic
// series is applied; at 15 the truncated series is below 1e-19.
constexpr double kAsymptoticFrom = 15.0;
constexpr double kHalfLogTwoPi = 0.91893853320467274178032973640561764;

void require_positive(double x, const char* fn) {
  if (!(x > 0.0)) {
    throw std::domain_error(std::string(fn) + ": argument must be > 0, got " +
                            std::to_string(x));
  }
}

// Horner in w = 1/x^2 over coefficient list c[0] + c[1] w + ...
template <std::size_t K>
double series(const std::array<double, K>& c, double w) {
  double acc = 0.0;
  for (std::size_t k = K; k-- > 0;) acc = acc * w + c[k];
  return acc;
}

double log_gamma_asymptotic(double x) {
  // B_{2k} / (2k (2k-1)) for k = 1..8
  static constexpr std::array<double, 8> c = {
      1.0 / 12.0,          -1.0 / 360.0,  1.0 / 1260.0, -1.0 / 1680.0,
      1.0 / 1188.0, -691.0 / 360360.0, 1.0 / 156.0, -3617.0 / 122400.0};
  const double w = 1.0 / (x * x);
  return (x - 0.5) * std::log(x) - x + kHalfLogTwoPi + series(c, w) / x;
}

double digamma_asymptotic(double x) {
  // B_{2k} / (2k) for k = 1..7
  static constexpr std::array<double, 7> c = {
      1.0 / 12.0,  -1.0 / 120.0, 1.0 / 252.0,        -1.0 / 240.0,
      1.0 / 132.0, -691.0 / 32760.0, 1.0 / 12.0};
  const double w = 1.0 / (x * x);
  return std::log(x) - 0.5 / x - w * series(c, w);
}

double trigamma_asymptotic(double x) {
  // B_{2k} for k = 1..7
  static constexpr std::array<double, 7> c = {
      1.0 / 6.0,   -1.0 / 30.0,        1.0 / 42.0, -1.0 / 30.0,
      5.0 / 66.0, -691.0 / 2730.0, 7.0 / 6.0};
  const double w = 1.0 / (x * x);
  return 1.0 / x + 0.5 * w + w * series(c, w) / x;
}

bool is_small_integer(double x, double limit) {
  return x <= limit && x == std::floor(x);
}

}  // namespace

double log_gamma(double x) {
  require_positive(x, "log_gamma");
  if (is_small_integer(x, 171.0)) {
    // ln (x-1)! ; exact zero at x = 1 and x = 2.
    double fact = 1.0;
    for (double k = 2.0; k < x; k += 1.0) fact *= k;
    return std::log(fact);
  }
  if (x >= kAsymptoticFrom) return log_gamma_asymptotic(x);

  double shifted = x;
  double prod = 1.0;
  while (shifted < kAsymptoticFrom) {
    prod *= shifted;
    shifted += 1.0;
  }
  return log_gamma_asymptotic(shifted) - std::log(prod);
}

double digamma(double x) {
  require_positive(x, "digamma");
  if (x >= kAsymptoticFrom) return digamma_asymptotic(x);

  const auto steps = static_cast<int>(std::ceil(kAsymptoticFrom - x));
  double correction = 0.0;
  // Smallest terms first.
  for (int i = steps - 1; i >= 0; --i) correction += 1.0 / (x + i);
  return digamma_asymptotic(x + steps) - correction;
}

double trigamma(double x) {
  require_positive(x, "trigamma");
  if (x >= kAsymptoticFrom) return trigamma_asymptotic(x);

  const auto steps = static_cast<int>(std::ceil(kAsymptoticFrom - x));
  double correction = 0.0;
  for (int i = steps - 1; i >= 0; --i) {
    const double y = x + i;
    correction += 1.0 / (y * y);
  }
  return trigamma_asymptotic(x + steps) + correction;
}

double log_gamma_ratio(double x, double a) {
  require_positive(x, "log_gamma_ratio");
  require_positive(x + a, "log_gamma_ratio");
  if (a >= 0.0 && is_small_integer(a, 64.0)) {
    double acc = 0.0;
    for (double k = 0.0; k < a; k += 1.0) acc += std::log(x + k);
    return acc;
  }
  return log_gamma(x + a) - log_gamma(x);
}

}  // namespace gwvn::specfun
